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

#include "phrasefix/synthetic_corpus.h"

#include <random>
#include <string>
#include <string_view>
#include <unordered_set>

namespace phrasefix {
namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::size_t Below(std::size_t bound) { return engine_() % bound; }
  template <typename T>
  const T& Pick(const std::vector<T>& items) {
    return items[Below(items.size())];
  }

 private:
  std::mt19937_64 engine_;
};

const std::vector<std::string_view> kDeterminers = {"the", "a", "this",
                                                     "every", "some"};
const std::vector<std::string_view> kAdjectives = {
    "small",  "quiet",  "green",   "heavy",  "bright", "ancient",
    "modern", "strong", "careful", "public", "local",  "european"};
const std::vector<std::string_view> kNouns = {
    "farmer",   "market",  "council",  "river",   "village", "teacher",
    "report",   "country", "minister", "company", "garden",  "student",
    "decision", "budget",  "harbour",  "museum",  "policy",  "railway"};
const std::vector<std::string_view> kVerbs = {
    "visited",  "approved", "described", "built",    "sold",
    "examined", "rejected", "supported", "followed", "praised"};
const std::vector<std::string_view> kPrepositions = {
    "near", "with", "for", "from", "behind", "across", "under"};
const std::vector<std::string_view> kAdverbs = {"quickly", "yesterday",
                                                 "again", "carefully"};

enum class Slot { kDet, kAdj, kNoun, kVerb, kPrep, kAdv };

const std::vector<std::vector<Slot>> kTemplates = {
    {Slot::kDet, Slot::kAdj, Slot::kNoun, Slot::kVerb, Slot::kDet, Slot::kNoun,
     Slot::kPrep, Slot::kDet, Slot::kNoun},
    {Slot::kDet, Slot::kNoun, Slot::kVerb, Slot::kDet, Slot::kAdj, Slot::kNoun,
     Slot::kAdv},
    {Slot::kDet, Slot::kNoun, Slot::kPrep, Slot::kDet, Slot::kNoun, Slot::kVerb,
     Slot::kDet, Slot::kNoun},
    {Slot::kDet, Slot::kAdj, Slot::kNoun, Slot::kPrep, Slot::kDet, Slot::kNoun,
     Slot::kVerb, Slot::kDet, Slot::kAdj, Slot::kNoun, Slot::kAdv},
    {Slot::kDet, Slot::kNoun, Slot::kVerb, Slot::kDet, Slot::kNoun},
    {Slot::kDet, Slot::kAdj, Slot::kNoun, Slot::kVerb, Slot::kDet, Slot::kNoun,
     Slot::kPrep, Slot::kDet, Slot::kAdj, Slot::kNoun, Slot::kPrep, Slot::kDet,
     Slot::kNoun, Slot::kAdv},
};

std::string_view Fill(Slot slot, Rng& rng) {
  switch (slot) {
    case Slot::kDet:
      return rng.Pick(kDeterminers);
    case Slot::kAdj:
      return rng.Pick(kAdjectives);
    case Slot::kNoun:
      return rng.Pick(kNouns);
    case Slot::kVerb:
      return rng.Pick(kVerbs);
    case Slot::kPrep:
      return rng.Pick(kPrepositions);
    case Slot::kAdv:
      return rng.Pick(kAdverbs);
  }
  return {};
}

}  // namespace

std::vector<Tokens> GenerateTemplateCorpus(std::size_t sentences,
                                           std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Tokens> corpus;
  corpus.reserve(sentences);
  for (std::size_t s = 0; s < sentences; ++s) {
    Tokens sentence;
    for (Slot slot : rng.Pick(kTemplates)) {
      sentence.emplace_back(Fill(slot, rng));
    }
    corpus.push_back(std::move(sentence));
  }
  return corpus;
}

std::vector<Tokens> GeneratePseudoWordCorpus(
    std::size_t sentences, std::uint64_t seed,
    const PseudoWordCorpusOptions& options) {
  Rng rng(seed);
  std::vector<std::string> words;
  std::unordered_set<std::string> seen;
  while (words.size() < options.vocabulary) {
    std::string word;
    const std::size_t length = 4 + rng.Below(6);
    for (std::size_t i = 0; i < length; ++i) {
      word.push_back(static_cast<char>('a' + rng.Below(26)));
    }
    if (seen.insert(word).second) words.push_back(std::move(word));
  }
  std::vector<std::vector<std::size_t>> successors(words.size());
  for (auto& next : successors) {
    for (std::size_t i = 0; i < options.successors; ++i) {
      next.push_back(rng.Below(words.size()));
    }
  }
  std::vector<Tokens> corpus;
  corpus.reserve(sentences);
  for (std::size_t s = 0; s < sentences; ++s) {
    Tokens sentence;
    std::size_t word = rng.Below(words.size());
    for (std::size_t i = 0; i < options.sentence_length; ++i) {
      sentence.push_back(words[word]);
      word = rng.Pick(successors[word]);
    }
    corpus.push_back(std::move(sentence));
  }
  return corpus;
}

}  // namespace phrasefix
