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

// Candidate generation for phrase replacement.
//
// FindBestSub works in two stages: fuzzy retrieval from the phrase index
// followed by a linear pass that keeps the T best matches under the
// combined distance, then the k highest language-model scores among those.
// FindKBestCommon is the shared-word heuristic of the fixed-length baseline.

#ifndef PHRASEFIX_SUBSTITUTER_H_
#define PHRASEFIX_SUBSTITUTER_H_

#include <cstddef>
#include <span>
#include <vector>

#include "phrasefix/ngram_model.h"
#include "phrasefix/phrase_distance.h"
#include "phrasefix/phrase_index.h"
#include "phrasefix/synonym_lexicon.h"
#include "phrasefix/text.h"

namespace phrasefix {

struct ScoredPhrase {
  Tokens tokens;
  double score = 0.0;  // log10 language-model score

  friend bool operator==(const ScoredPhrase&, const ScoredPhrase&) = default;
};

// Score descending, then tokens ascending.
bool BetterScored(const ScoredPhrase& a, const ScoredPhrase& b);

struct SubstituterConfig {
  std::size_t pool_size = 200;  // T
  std::size_t k = 5;
  DistanceConfig distance;
  // Adds the unchanged phrase to every candidate list before truncation.
  bool include_identity = true;
  // Skips candidates whose length differs from the phrase by more than this
  // many words. Negative means no limit.
  int max_length_delta = -1;

  // Throws std::invalid_argument unless 1 <= k <= pool_size and the
  // distance configuration is valid.
  void Validate() const;
};

struct SubstituterStats {
  std::size_t retrieved = 0;  // |Out_q|
  std::size_t rejected = 0;   // dropped by the rigid word-order filter
  std::size_t pool = 0;       // kept after the first stage
};

class Substituter {
 public:
  // The index, model and lexicon must outlive the substituter.
  Substituter(const PhraseIndex& index, const NgramModel& model,
              const SynonymLexicon& lexicon, SubstituterConfig config);

  struct Match {
    DocId doc = 0;
    double similarity = 0.0;
  };

  // First stage only: retrieved documents that pass the distance filter,
  // best `pool_size` by similarity, then tokens, ordered best first.
  std::vector<Match> MatchPool(TokenSpan phrase,
                               SubstituterStats* stats = nullptr) const;

  // Up to k candidates ordered by language-model score, best first. Ties go
  // to the higher similarity, then to the lexicographically smaller phrase.
  std::vector<ScoredPhrase> FindBestSub(TokenSpan phrase,
                                        SubstituterStats* stats = nullptr) const;

  const SubstituterConfig& config() const { return config_; }

 private:
  const PhraseIndex& index_;
  const NgramModel& model_;
  const SynonymLexicon& lexicon_;
  SubstituterConfig config_;
};

// Stored phrases sharing at least two distinct words with `phrase`, in
// input order. Phrases shorter than two words match nothing.
std::vector<Tokens> FindKBestCommon(std::span<const PhraseDoc> docs,
                                    TokenSpan phrase);
// Postings-based equivalent returning ascending docids.
std::vector<DocId> FindKBestCommon(const PhraseIndex& index, TokenSpan phrase);

}  // namespace phrasefix

#endif  // PHRASEFIX_SUBSTITUTER_H_
