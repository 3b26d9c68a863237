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

// Sentence correction.
//
// CorrectDp fills an upper-triangular chart bottom-up, CYK style. Each cell
// (i, j) starts from the substitutes of words i..j and absorbs every
// concatenation of its two sub-cells at each split point, rescoring the
// whole concatenation with the language model and keeping the k best.
//
// CorrectFixed is the fixed-length baseline: consecutive phrases of L words,
// each rewritten by a recursive search over overlapping order-n windows.

#ifndef PHRASEFIX_CORRECTOR_H_
#define PHRASEFIX_CORRECTOR_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "phrasefix/ngram_model.h"
#include "phrasefix/substituter.h"
#include "phrasefix/text.h"

namespace phrasefix {

// Upper-triangular chart of k-best lists over spans [i, j], 0-based,
// inclusive, i <= j < n.
class RepTable {
 public:
  explicit RepTable(std::size_t n = 0);

  std::size_t n() const { return n_; }
  std::vector<ScoredPhrase>& at(std::size_t i, std::size_t j);
  const std::vector<ScoredPhrase>& at(std::size_t i, std::size_t j) const;

 private:
  std::size_t Slot(std::size_t i, std::size_t j) const;

  std::size_t n_;
  std::vector<std::vector<ScoredPhrase>> cells_;
};

// Produces the initial substitutes for a span of the sentence.
using CandidateSource = std::function<std::vector<ScoredPhrase>(TokenSpan)>;

// Every concatenation left x right rescored as a whole, best first, with
// duplicates removed and the list cut to k. `candidates`, when given, is
// increased by the number of concatenations formed.
std::vector<ScoredPhrase> CombineCells(std::span<const ScoredPhrase> left,
                                       std::span<const ScoredPhrase> right,
                                       const NgramModel& model, std::size_t k,
                                       std::uint64_t* candidates = nullptr);

struct CorrectionCounters {
  std::uint64_t split_evaluations = 0;   // (cell, split point) pairs
  std::uint64_t substitution_calls = 0;  // candidate source invocations
  std::uint64_t rescored = 0;            // concatenations scored by the LM
  std::uint64_t cells_filled = 0;
  std::uint64_t search_leaves = 0;       // fixed-length recursion leaves
};

struct CorrectionResult {
  Tokens original;
  Tokens corrected;
  double score_before = 0.0;
  double score_after = 0.0;
  std::vector<ScoredPhrase> kbest;
  CorrectionCounters counters;
  double elapsed_seconds = 0.0;
  // Per-window candidate cap used by the fixed-length search; 0 for DP.
  std::size_t window_candidate_cap = 0;
};

// Throws std::invalid_argument for an empty sentence or k == 0. When
// `chart` is given it receives the filled table.
CorrectionResult CorrectDp(TokenSpan sentence, const NgramModel& model,
                           const CandidateSource& substitutes, std::size_t k,
                           RepTable* chart = nullptr);

// Replacement phrases for an order-n window of the fixed-length search.
using WindowCandidateSource = std::function<std::vector<Tokens>(TokenSpan)>;

struct FixedConfig {
  std::size_t phrase_length = 7;  // L
  // The window candidates with the best LM scores are explored, at most
  // this many per window.
  std::size_t window_candidate_cap = 10;
};

// Returns the rewritten sentence only when it outscores the original.
// Throws std::invalid_argument for an empty sentence or L below the model
// order. Candidates longer than their window are ignored.
CorrectionResult CorrectFixed(TokenSpan sentence, const NgramModel& model,
                              const WindowCandidateSource& candidates,
                              const FixedConfig& config);

}  // namespace phrasefix

#endif  // PHRASEFIX_CORRECTOR_H_
