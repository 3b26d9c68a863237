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

#include "phrasefix/phrase_distance.h"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace phrasefix {
namespace {

// Scratch buffers for the allocation-free scoring path.
struct Scratch {
  std::vector<std::uint8_t> used;
  std::vector<std::size_t> positions;
  std::vector<std::size_t> sorted;
  std::vector<std::size_t> lcs_row;
  std::vector<std::size_t> merge;
};

Scratch& ThreadScratch() {
  thread_local Scratch scratch;
  return scratch;
}

// Calls emit(i, j) for every aligned pair, in P order.
template <typename Emit>
void GreedyAlign(const PairTable& table, int threshold,
                 std::vector<std::uint8_t>& used, Emit emit) {
  used.assign(table.cols(), 0);
  for (std::size_t i = 0; i < table.rows(); ++i) {
    std::size_t best = table.cols();
    int best_edit = threshold;
    for (std::size_t j = 0; j < table.cols(); ++j) {
      if (!used[j] && table.edit(i, j) < best_edit) {
        best_edit = table.edit(i, j);
        best = j;
      }
    }
    if (best < table.cols()) {
      used[best] = 1;
      emit(i, best);
    }
  }
}

std::size_t Lcs(std::span<const std::size_t> a, std::span<const std::size_t> b,
                std::vector<std::size_t>& row) {
  row.assign(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = a[i - 1] == b[j - 1] ? diagonal + 1 : std::max(up, row[j - 1]);
      diagonal = up;
    }
  }
  return row[b.size()];
}

std::uint64_t SortCount(std::span<std::size_t> values,
                        std::vector<std::size_t>& buffer) {
  if (values.size() < 2) return 0;
  const std::size_t mid = values.size() / 2;
  std::uint64_t count = SortCount(values.first(mid), buffer) +
                        SortCount(values.subspan(mid), buffer);
  buffer.clear();
  std::size_t i = 0;
  std::size_t j = mid;
  while (i < mid && j < values.size()) {
    if (values[j] < values[i]) {
      count += mid - i;
      buffer.push_back(values[j++]);
    } else {
      buffer.push_back(values[i++]);
    }
  }
  buffer.insert(buffer.end(), values.begin() + i, values.begin() + mid);
  buffer.insert(buffer.end(), values.begin() + j, values.end());
  std::copy(buffer.begin(), buffer.end(), values.begin());
  return count;
}

std::optional<double> OrderScore(std::span<const std::size_t> positions,
                                 WordOrderMode mode, Scratch& scratch) {
  switch (mode) {
    case WordOrderMode::kNone:
      return 1.0;
    case WordOrderMode::kRigid:
      if (positions.empty()) return std::nullopt;
      for (std::size_t i = 1; i < positions.size(); ++i) {
        if (positions[i] <= positions[i - 1]) return std::nullopt;
      }
      return 1.0;
    case WordOrderMode::kLcs: {
      if (positions.empty()) return 0.0;
      scratch.sorted.assign(positions.begin(), positions.end());
      std::sort(scratch.sorted.begin(), scratch.sorted.end());
      return static_cast<double>(Lcs(positions, scratch.sorted,
                                     scratch.lcs_row)) /
             static_cast<double>(positions.size());
    }
    case WordOrderMode::kInversion: {
      if (positions.empty()) return 0.0;
      scratch.sorted.assign(positions.begin(), positions.end());
      const std::uint64_t inversions =
          SortCount(scratch.sorted, scratch.merge);
      return 1.0 / (1.0 + static_cast<double>(inversions));
    }
  }
  return std::nullopt;
}

void RequireNonEmpty(const PairTable& table) {
  if (table.rows() == 0 || table.cols() == 0) {
    throw std::invalid_argument("phrase comparison needs non-empty phrases");
  }
}

}  // namespace

int Levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<int> row(b.size() + 1);
  std::iota(row.begin(), row.end(), 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    int diagonal = row[0];
    row[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int up = row[j];
      const int cost = a[i - 1] == b[j - 1] ? 0 : 1;
      row[j] = std::min({up + 1, row[j - 1] + 1, diagonal + cost});
      diagonal = up;
    }
  }
  return row[b.size()];
}

std::optional<WordOrderMode> ParseWordOrderMode(std::string_view code) {
  if (code.size() != 1) return std::nullopt;
  switch (std::toupper(static_cast<unsigned char>(code[0]))) {
    case 'A':
      return WordOrderMode::kNone;
    case 'B':
      return WordOrderMode::kRigid;
    case 'C':
      return WordOrderMode::kLcs;
    case 'D':
      return WordOrderMode::kInversion;
  }
  return std::nullopt;
}

char WordOrderModeCode(WordOrderMode mode) {
  switch (mode) {
    case WordOrderMode::kNone:
      return 'A';
    case WordOrderMode::kRigid:
      return 'B';
    case WordOrderMode::kLcs:
      return 'C';
    case WordOrderMode::kInversion:
      return 'D';
  }
  return '?';
}

void DistanceConfig::Validate() const {
  if (orthographic_weight < 0 || synonym_weight < 0 || order_weight < 0) {
    throw std::invalid_argument("distance weights must be non-negative");
  }
  const bool order_scored =
      mode == WordOrderMode::kLcs || mode == WordOrderMode::kInversion;
  const double total =
      orthographic_weight + synonym_weight + (order_scored ? order_weight : 0);
  if (!(total > 0)) {
    throw std::invalid_argument("enabled distance weights sum to zero");
  }
  if (align_threshold < 1 || retrieval_threshold < 1) {
    throw std::invalid_argument("distance thresholds must be >= 1");
  }
}

PairTable::PairTable(std::size_t rows, std::size_t cols)
    : rows_(rows),
      cols_(cols),
      edit_(rows * cols, 0),
      normalized_(rows * cols, 0.0),
      synonym_(rows * cols, 0) {}

void PairTable::Reset(std::size_t rows, std::size_t cols) {
  rows_ = rows;
  cols_ = cols;
  edit_.assign(rows * cols, 0);
  normalized_.assign(rows * cols, 0.0);
  synonym_.assign(rows * cols, 0);
}

PairTable PairTable::Compute(TokenSpan p, TokenSpan r,
                             const SynonymLexicon* lexicon) {
  PairTable table(p.size(), r.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      const bool synonym =
          lexicon ? lexicon->ShareSynset(p[i], r[j]) : p[i] == r[j];
      table.Set(i, j, Levenshtein(p[i], r[j]),
                std::max(p[i].size(), r[j].size()), synonym);
    }
  }
  return table;
}

void PairTable::Set(std::size_t i, std::size_t j, int edit,
                    std::size_t max_length, bool synonym) {
  const std::size_t at = i * cols_ + j;
  edit_[at] = edit;
  normalized_[at] =
      max_length == 0 ? 0.0
                      : static_cast<double>(edit) /
                            static_cast<double>(max_length);
  synonym_[at] = synonym ? 1 : 0;
}

Alignment Align(const PairTable& table, int threshold) {
  std::vector<std::uint8_t> used;
  Alignment alignment;
  GreedyAlign(table, threshold, used, [&](std::size_t i, std::size_t j) {
    alignment.emplace_back(i, j);
  });
  return alignment;
}

Alignment Align(TokenSpan p, TokenSpan r, int threshold) {
  return Align(PairTable::Compute(p, r, nullptr), threshold);
}

double OrthographicSimilarity(const PairTable& table) {
  RequireNonEmpty(table);
  double total = 0.0;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    double best = table.normalized(i, 0);
    for (std::size_t j = 1; j < table.cols(); ++j) {
      best = std::min(best, table.normalized(i, j));
    }
    total += best;
  }
  return std::clamp(1.0 - total / static_cast<double>(table.rows()), 0.0, 1.0);
}

double OrthographicSimilarity(TokenSpan p, TokenSpan r) {
  return OrthographicSimilarity(PairTable::Compute(p, r, nullptr));
}

double SynonymSimilarity(const PairTable& table) {
  if (table.rows() == 0) {
    throw std::invalid_argument("synonym similarity needs a non-empty phrase");
  }
  std::size_t matched = 0;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    for (std::size_t j = 0; j < table.cols(); ++j) {
      if (table.synonym(i, j)) {
        ++matched;
        break;
      }
    }
  }
  return static_cast<double>(matched) / static_cast<double>(table.rows());
}

double SynonymSimilarity(TokenSpan p, TokenSpan r,
                         const SynonymLexicon& lexicon) {
  return SynonymSimilarity(PairTable::Compute(p, r, &lexicon));
}

std::size_t LongestCommonSubsequence(std::span<const std::size_t> a,
                                     std::span<const std::size_t> b) {
  std::vector<std::size_t> row;
  return Lcs(a, b, row);
}

std::uint64_t CountInversions(std::span<const std::size_t> values) {
  std::vector<std::size_t> copy(values.begin(), values.end());
  std::vector<std::size_t> buffer;
  return SortCount(copy, buffer);
}

std::optional<double> WordOrderScore(std::span<const std::size_t> r_positions,
                                     WordOrderMode mode) {
  return OrderScore(r_positions, mode, ThreadScratch());
}

std::optional<double> WordOrderSimilarity(TokenSpan p, TokenSpan r,
                                          WordOrderMode mode, int threshold) {
  std::vector<std::size_t> positions;
  for (const auto& [pi, ri] : Align(p, r, threshold)) positions.push_back(ri);
  return WordOrderScore(positions, mode);
}

std::optional<double> CombinedScore(const PairTable& table,
                                    const DistanceConfig& config) {
  RequireNonEmpty(table);
  double weighted = config.orthographic_weight * OrthographicSimilarity(table) +
                    config.synonym_weight * SynonymSimilarity(table);
  double total_weight = config.orthographic_weight + config.synonym_weight;
  if (config.mode != WordOrderMode::kNone) {
    Scratch& scratch = ThreadScratch();
    scratch.positions.clear();
    GreedyAlign(table, config.align_threshold, scratch.used,
                [&](std::size_t, std::size_t j) {
                  scratch.positions.push_back(j);
                });
    const std::optional<double> order =
        OrderScore(scratch.positions, config.mode, scratch);
    if (!order) return std::nullopt;
    if (config.mode != WordOrderMode::kRigid) {
      weighted += config.order_weight * *order;
      total_weight += config.order_weight;
    }
  }
  return std::clamp(weighted / total_weight, 0.0, 1.0);
}

std::optional<double> CombinedScore(TokenSpan p, TokenSpan r,
                                    const SynonymLexicon& lexicon,
                                    const DistanceConfig& config) {
  return CombinedScore(PairTable::Compute(p, r, &lexicon), config);
}

}  // namespace phrasefix
