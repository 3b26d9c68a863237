// Copyright 2026 The Phrasefix Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seeded synthetic corpora for tests, benchmarks and demos.

#ifndef PHRASEFIX_SYNTHETIC_CORPUS_H_
#define PHRASEFIX_SYNTHETIC_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "phrasefix/text.h"

namespace phrasefix {

// Sentences of 6 to 14 words drawn from a small English-like template
// grammar (determiners, adjectives, nouns, verbs, prepositions).
std::vector<Tokens> GenerateTemplateCorpus(std::size_t sentences,
                                           std::uint64_t seed);

struct PseudoWordCorpusOptions {
  std::size_t vocabulary = 2000;
  std::size_t successors = 8;  // distinct followers per word
  std::size_t sentence_length = 16;
};

// Random-letter words chained by a sparse successor graph, so the n-gram
// inventory grows with the corpus instead of saturating.
std::vector<Tokens> GeneratePseudoWordCorpus(
    std::size_t sentences, std::uint64_t seed,
    const PseudoWordCorpusOptions& options = {});

}  // namespace phrasefix

#endif  // PHRASEFIX_SYNTHETIC_CORPUS_H_
