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

// Word- and phrase-level similarity between a phrase P and a candidate
// replacement R. Every component is a similarity in [0, 1], higher is
// better; the rigid word-order filter signals rejection separately.

#ifndef PHRASEFIX_PHRASE_DISTANCE_H_
#define PHRASEFIX_PHRASE_DISTANCE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phrasefix/synonym_lexicon.h"
#include "phrasefix/text.h"

namespace phrasefix {

// Unit-cost insertion, deletion and substitution distance over bytes.
int Levenshtein(std::string_view a, std::string_view b);

// Word-order component, one per distance function code:
// A ignores order, B rejects crossed alignments, C scores the LCS of the
// aligned positions and D scores inversion pairs.
enum class WordOrderMode { kNone, kRigid, kLcs, kInversion };

// Parses "A".."D" (case-insensitive). Returns nullopt otherwise.
std::optional<WordOrderMode> ParseWordOrderMode(std::string_view code);
char WordOrderModeCode(WordOrderMode mode);

struct DistanceConfig {
  WordOrderMode mode = WordOrderMode::kLcs;
  // Relative weights; renormalized over the enabled components.
  double orthographic_weight = 1.0;
  double synonym_weight = 1.0;
  double order_weight = 1.0;
  // Words align when their edit distance is below this bound.
  int align_threshold = 3;
  // Retrieval threshold D_t: dictionary words with distance < D_t match.
  int retrieval_threshold = 3;

  // Throws std::invalid_argument for negative weights, an all-zero enabled
  // weight vector, or thresholds below 1.
  void Validate() const;
};

// One-to-one word alignment as (index in P, index in R), ascending in P.
using Alignment = std::vector<std::pair<std::size_t, std::size_t>>;

// Pairwise word relations between P (rows) and R (columns). Computing it
// once lets every component share the edit distances.
class PairTable {
 public:
  PairTable() = default;
  PairTable(std::size_t rows, std::size_t cols);

  // Fills edit distances, word lengths and synonym flags directly. The
  // lexicon may be null, in which case only identical words share.
  static PairTable Compute(TokenSpan p, TokenSpan r,
                           const SynonymLexicon* lexicon);

  // Resizes in place, keeping allocated capacity.
  void Reset(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void Set(std::size_t i, std::size_t j, int edit, std::size_t max_length,
           bool synonym);
  int edit(std::size_t i, std::size_t j) const { return edit_[i * cols_ + j]; }
  double normalized(std::size_t i, std::size_t j) const {
    return normalized_[i * cols_ + j];
  }
  bool synonym(std::size_t i, std::size_t j) const {
    return synonym_[i * cols_ + j] != 0;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<int> edit_;
  std::vector<double> normalized_;
  std::vector<std::uint8_t> synonym_;
};

// Greedy left to right over P: each word takes the unaligned R word with the
// smallest distance below the threshold, ties going to the leftmost.
Alignment Align(const PairTable& table, int threshold);
Alignment Align(TokenSpan p, TokenSpan r, int threshold);

// 1 - mean over P of the best normalized edit distance to any word of R.
double OrthographicSimilarity(const PairTable& table);
double OrthographicSimilarity(TokenSpan p, TokenSpan r);

// Fraction of P's words with a synonym (or the same word) in R.
double SynonymSimilarity(const PairTable& table);
double SynonymSimilarity(TokenSpan p, TokenSpan r,
                         const SynonymLexicon& lexicon);

std::size_t LongestCommonSubsequence(std::span<const std::size_t> a,
                                     std::span<const std::size_t> b);
// Pairs i < j with a[i] > a[j]; O(n log n).
std::uint64_t CountInversions(std::span<const std::size_t> values);

// Word-order score of the R positions taken in P order. Returns nullopt
// for a rigid rejection. Empty alignments give 0 (reject under rigid).
std::optional<double> WordOrderScore(std::span<const std::size_t> r_positions,
                                     WordOrderMode mode);
std::optional<double> WordOrderSimilarity(TokenSpan p, TokenSpan r,
                                          WordOrderMode mode, int threshold);

// Weighted combination of the enabled components, or nullopt when the rigid
// filter rejects R. Throws std::invalid_argument if P or R is empty.
std::optional<double> CombinedScore(const PairTable& table,
                                    const DistanceConfig& config);
std::optional<double> CombinedScore(TokenSpan p, TokenSpan r,
                                    const SynonymLexicon& lexicon,
                                    const DistanceConfig& config);

}  // namespace phrasefix

#endif  // PHRASEFIX_PHRASE_DISTANCE_H_
