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

// Evaluation metrics and a seeded noise injector for building test data.

#ifndef PHRASEFIX_EVALUATION_H_
#define PHRASEFIX_EVALUATION_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "phrasefix/ngram_model.h"
#include "phrasefix/synonym_lexicon.h"
#include "phrasefix/text.h"

namespace phrasefix {

struct NgramMatches {
  std::size_t clipped = 0;  // candidate n-gram counts clipped by references
  std::size_t total = 0;    // candidate n-grams
};

// Clipped n-gram matches of a candidate against its references. A
// candidate shorter than n yields {0, 0}.
NgramMatches ModifiedPrecision(TokenSpan candidate,
                               std::span<const Tokens> references,
                               std::size_t n);

struct BleuStats {
  std::vector<NgramMatches> orders;  // aggregated per n = 1..max_n
  std::size_t candidate_length = 0;  // c
  std::size_t reference_length = 0;  // r, closest reference per segment
  double brevity_penalty = 1.0;
};

// Corpus BLEU: geometric mean of aggregated modified precisions times the
// brevity penalty exp(1 - r/c) when c <= r. A zero aggregate match count at
// any order gives 0. Throws std::invalid_argument when the lists differ in
// length, are empty, or a segment has no reference.
double Bleu(std::span<const Tokens> candidates,
            std::span<const std::vector<Tokens>> references,
            std::size_t max_n = 4, BleuStats* stats = nullptr);

// Token-weighted perplexity: log2 losses and summed positions are pooled
// over all sentences before averaging. Sentences shorter than the model
// order contribute nothing. Throws std::invalid_argument for an empty list
// or when no sentence reaches the model order.
double CorpusPerplexity(const NgramModel& model,
                        std::span<const Tokens> sentences);

// Error categories: reordering, missing word, word choice and spelling.
struct NoiseSpec {
  std::uint64_t seed = 0;
  std::size_t swap_adjacent = 0;
  std::size_t delete_word = 0;
  std::size_t substitute_word = 0;
  std::size_t typo_char = 0;

  std::size_t total() const {
    return swap_adjacent + delete_word + substitute_word + typo_char;
  }
};

// Substitution sources. Synonyms are preferred; otherwise a different word
// is drawn from the vocabulary. Either may be absent.
struct NoiseResources {
  const SynonymLexicon* lexicon = nullptr;
  std::span<const std::string> vocabulary;
};

struct NoiseReport {
  std::size_t swaps = 0;
  std::size_t deletions = 0;
  std::size_t substitutions = 0;
  std::size_t typos = 0;
};

// Applies swaps, then deletions, substitutions and typos, each the number of
// times requested. An operation that cannot apply (a swap on one word, a
// deletion that would empty the sentence, a substitution with no source) is
// skipped. The output depends only on the sentence, spec and resources.
Tokens InjectNoise(TokenSpan sentence, const NoiseSpec& spec,
                   const NoiseResources& resources = {},
                   NoiseReport* report = nullptr);

}  // namespace phrasefix

#endif  // PHRASEFIX_EVALUATION_H_
