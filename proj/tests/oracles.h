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

// Brute-force reference implementations shared by the unit and acceptance
// tests. None of these call into the library code they check.

#ifndef PHRASEFIX_TESTS_ORACLES_H_
#define PHRASEFIX_TESTS_ORACLES_H_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "phrasefix/corrector.h"
#include "phrasefix/ngram_model.h"
#include "phrasefix/substituter.h"
#include "phrasefix/text.h"

namespace phrasefix::testing {

// Full-matrix edit distance.
inline int NaiveLevenshtein(const std::string& a, const std::string& b) {
  std::vector<std::vector<int>> d(a.size() + 1,
                                  std::vector<int>(b.size() + 1, 0));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<int>(i);
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

inline std::string RandomWord(std::mt19937_64& rng, std::size_t min_len,
                              std::size_t max_len, int alphabet = 26) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<int> ch(0, alphabet - 1);
  std::string w(len(rng), 'a');
  for (char& c : w) c = static_cast<char>('a' + ch(rng));
  return w;
}

inline double SumLog10(const NgramModel& model, const Tokens& s) {
  double total = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    total += model.ScoreWord(s[j], TokenSpan(s).first(j));
  }
  return total;
}

// Every variant reachable by cutting the sentence into contiguous spans and
// replacing each span by one of its candidates. Returns the best whole score.
inline double ExhaustiveBest(const Tokens& sentence, const NgramModel& model,
                             const CandidateSource& source) {
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Tokens>> cache;
  auto options = [&](std::size_t i, std::size_t len) -> std::vector<Tokens>& {
    auto key = std::make_pair(i, len);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<Tokens> out;
    for (const ScoredPhrase& p :
         source(TokenSpan(sentence).subspan(i, len))) {
      out.push_back(p.tokens);
    }
    return cache.emplace(key, std::move(out)).first->second;
  };
  double best = -std::numeric_limits<double>::infinity();
  Tokens current;
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == sentence.size()) {
      best = std::max(best, SumLog10(model, current));
      return;
    }
    for (std::size_t len = 1; i + len <= sentence.size(); ++len) {
      for (const Tokens& c : options(i, len)) {
        const std::size_t mark = current.size();
        current.insert(current.end(), c.begin(), c.end());
        walk(i + len);
        current.resize(mark);
      }
    }
  };
  walk(0);
  return best;
}

// Random bigram-style toy model over a small vocabulary. Probabilities need
// not normalize; the corrector only compares scores.
inline NgramModel RandomToyModel(std::mt19937_64& rng, int order,
                                 std::size_t vocabulary) {
  NgramModel model(order);
  std::uniform_real_distribution<double> logprob(-3.0, -0.05);
  std::uniform_real_distribution<double> backoff(-1.0, 0.0);
  std::vector<std::string> words;
  for (std::size_t i = 0; i < vocabulary; ++i) {
    words.push_back("w" + std::to_string(i));
    model.AddEntry({{words.back()}, logprob(rng), order > 1 ? backoff(rng) : 0});
  }
  std::bernoulli_distribution keep(0.4);
  for (int n = 2; n <= order; ++n) {
    for (const NgramEntry& h : model.Entries(n - 1)) {
      for (const std::string& w : words) {
        if (!keep(rng)) continue;
        Tokens t = h.tokens;
        t.push_back(w);
        model.AddEntry({t, logprob(rng), n < order ? backoff(rng) : 0});
      }
    }
  }
  return model;
}

// Span-keyed random candidates: the identity plus up to `extra` random
// phrases of length 1..span+1 drawn from the model vocabulary.
inline CandidateSource RandomCandidateSource(const NgramModel& model,
                                             std::uint64_t seed,
                                             std::size_t extra) {
  std::vector<std::string> vocab(model.vocabulary().begin(),
                                 model.vocabulary().end());
  std::sort(vocab.begin(), vocab.end());
  return [&model, vocab, seed, extra](TokenSpan span) {
    std::seed_seq seq{seed, std::hash<std::string>{}(JoinTokens(span))};
    std::mt19937_64 rng(seq);
    std::vector<ScoredPhrase> out;
    Tokens identity(span.begin(), span.end());
    out.push_back({identity, model.ScoreSequence(identity)});
    std::uniform_int_distribution<std::size_t> count(0, extra);
    std::uniform_int_distribution<std::size_t> len(1, span.size() + 1);
    std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
    const std::size_t m = count(rng);
    for (std::size_t c = 0; c < m; ++c) {
      Tokens t(len(rng));
      for (std::string& w : t) w = vocab[pick(rng)];
      out.push_back({t, model.ScoreSequence(t)});
    }
    return out;
  };
}

}  // namespace phrasefix::testing

#endif  // PHRASEFIX_TESTS_ORACLES_H_
