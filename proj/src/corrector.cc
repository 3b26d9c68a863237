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

#include "phrasefix/corrector.h"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace phrasefix {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Sorts best first, drops repeated phrases and keeps the k best.
void Normalize(std::vector<ScoredPhrase>& list, std::size_t k) {
  std::sort(list.begin(), list.end(), BetterScored);
  list.erase(std::unique(list.begin(), list.end(),
                         [](const ScoredPhrase& a, const ScoredPhrase& b) {
                           return a.tokens == b.tokens;
                         }),
             list.end());
  if (list.size() > k) list.resize(k);
}

}  // namespace

RepTable::RepTable(std::size_t n) : n_(n), cells_(n * (n + 1) / 2) {}

std::size_t RepTable::Slot(std::size_t i, std::size_t j) const {
  if (i > j || j >= n_) throw std::out_of_range("chart cell outside i<=j<n");
  // Rows of decreasing length: row i holds n - i cells.
  return i * n_ - i * (i - 1) / 2 + (j - i);
}

std::vector<ScoredPhrase>& RepTable::at(std::size_t i, std::size_t j) {
  return cells_[Slot(i, j)];
}

const std::vector<ScoredPhrase>& RepTable::at(std::size_t i,
                                              std::size_t j) const {
  return cells_[Slot(i, j)];
}

std::vector<ScoredPhrase> CombineCells(std::span<const ScoredPhrase> left,
                                       std::span<const ScoredPhrase> right,
                                       const NgramModel& model, std::size_t k,
                                       std::uint64_t* candidates) {
  std::vector<ScoredPhrase> out;
  out.reserve(left.size() * right.size());
  for (const ScoredPhrase& p : left) {
    for (const ScoredPhrase& q : right) {
      Tokens joined;
      joined.reserve(p.tokens.size() + q.tokens.size());
      joined.insert(joined.end(), p.tokens.begin(), p.tokens.end());
      joined.insert(joined.end(), q.tokens.begin(), q.tokens.end());
      const double score = model.ScoreSequence(joined);
      out.push_back({std::move(joined), score});
    }
  }
  if (candidates) *candidates += out.size();
  Normalize(out, k);
  return out;
}

CorrectionResult CorrectDp(TokenSpan sentence, const NgramModel& model,
                           const CandidateSource& substitutes, std::size_t k,
                           RepTable* chart) {
  if (sentence.empty()) throw std::invalid_argument("empty sentence");
  if (k == 0) throw std::invalid_argument("k must be positive");
  const auto start = Clock::now();
  const std::size_t n = sentence.size();
  CorrectionResult result;
  result.original.assign(sentence.begin(), sentence.end());
  result.score_before = model.ScoreSequence(sentence);

  RepTable rep(n);
  for (std::size_t length = 1; length <= n; ++length) {
    for (std::size_t i = 0; i + length <= n; ++i) {
      const std::size_t j = i + length - 1;
      std::vector<ScoredPhrase> cell = substitutes(sentence.subspan(i, length));
      ++result.counters.substitution_calls;
      for (std::size_t split = i; split < j; ++split) {
        ++result.counters.split_evaluations;
        std::vector<ScoredPhrase> combined =
            CombineCells(rep.at(i, split), rep.at(split + 1, j), model, k,
                         &result.counters.rescored);
        cell.insert(cell.end(), std::make_move_iterator(combined.begin()),
                    std::make_move_iterator(combined.end()));
      }
      Normalize(cell, k);
      rep.at(i, j) = std::move(cell);
      ++result.counters.cells_filled;
    }
  }

  result.kbest = rep.at(0, n - 1);
  if (!result.kbest.empty() &&
      result.kbest.front().score >= result.score_before) {
    result.corrected = result.kbest.front().tokens;
    result.score_after = result.kbest.front().score;
  } else {
    // Only reachable when the source omits the unchanged phrase.
    result.corrected = result.original;
    result.score_after = result.score_before;
  }
  if (chart) *chart = std::move(rep);
  result.elapsed_seconds = SecondsSince(start);
  return result;
}

CorrectionResult CorrectFixed(TokenSpan sentence, const NgramModel& model,
                              const WindowCandidateSource& candidates,
                              const FixedConfig& config) {
  if (sentence.empty()) throw std::invalid_argument("empty sentence");
  const auto window = static_cast<std::size_t>(model.order());
  if (config.phrase_length < window) {
    throw std::invalid_argument("phrase length " +
                                std::to_string(config.phrase_length) +
                                " is below the model order " +
                                std::to_string(window));
  }
  const auto start = Clock::now();
  CorrectionResult result;
  result.original.assign(sentence.begin(), sentence.end());
  result.score_before = model.ScoreSequence(sentence);
  result.window_candidate_cap = config.window_candidate_cap;

  // Window lookups repeat heavily across the recursion.
  std::unordered_map<std::string, std::vector<Tokens>> memo;
  auto window_candidates = [&](TokenSpan w) -> const std::vector<Tokens>& {
    const std::string key = JoinTokens(w);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    ++result.counters.substitution_calls;
    std::vector<ScoredPhrase> scored;
    for (Tokens& c : candidates(w)) {
      if (c.empty() || c.size() > w.size()) continue;
      const double score = model.ScoreSequence(c);
      scored.push_back({std::move(c), score});
    }
    std::sort(scored.begin(), scored.end(), BetterScored);
    if (scored.size() > config.window_candidate_cap) {
      scored.resize(config.window_candidate_cap);
    }
    std::vector<Tokens> kept;
    for (ScoredPhrase& s : scored) kept.push_back(std::move(s.tokens));
    return memo.emplace(key, std::move(kept)).first->second;
  };

  Tokens rewritten;
  for (std::size_t begin = 0; begin < sentence.size();
       begin += config.phrase_length) {
    const TokenSpan phrase = sentence.subspan(
        begin, std::min(config.phrase_length, sentence.size() - begin));
    if (phrase.size() < config.phrase_length) {
      rewritten.insert(rewritten.end(), phrase.begin(), phrase.end());
      continue;
    }
    Tokens best(phrase.begin(), phrase.end());
    double best_score = model.ScoreSequence(phrase);

    auto search = [&](auto& self, const Tokens& current,
                      std::size_t index) -> void {
      if (index + window > current.size()) {
        ++result.counters.search_leaves;
        const double score = model.ScoreSequence(current);
        if (score > best_score) {
          best_score = score;
          best = current;
        }
        return;
      }
      const TokenSpan w = TokenSpan(current).subspan(index, window);
      for (const Tokens& replacement : window_candidates(w)) {
        Tokens next(current.begin(), current.begin() + index);
        next.insert(next.end(), replacement.begin(), replacement.end());
        next.insert(next.end(), current.begin() + index + window,
                    current.end());
        self(self, next, index + 1);
      }
    };
    search(search, Tokens(phrase.begin(), phrase.end()), 0);
    rewritten.insert(rewritten.end(), best.begin(), best.end());
  }

  const double rewritten_score = model.ScoreSequence(rewritten);
  if (rewritten_score > result.score_before) {
    result.corrected = std::move(rewritten);
    result.score_after = rewritten_score;
  } else {
    result.corrected = result.original;
    result.score_after = result.score_before;
  }
  result.kbest = {{result.corrected, result.score_after}};
  result.elapsed_seconds = SecondsSince(start);
  return result;
}

}  // namespace phrasefix
