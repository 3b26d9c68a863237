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

#include "phrasefix/substituter.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.h"
#include "phrasefix/phrase_index.h"
#include "phrasefix/synonym_lexicon.h"

namespace phrasefix {
namespace {

using testing::NaiveLevenshtein;

struct Fixture {
  NgramModel model{2};
  std::vector<PhraseDoc> docs;
  PhraseIndex index;
  SynonymLexicon lexicon;
};

Fixture MakeFixture(const std::vector<Tokens>& phrases, std::uint64_t seed) {
  Fixture f;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lp(-3.0, -0.1);
  std::set<std::string> vocab;
  for (const Tokens& p : phrases) vocab.insert(p.begin(), p.end());
  for (const std::string& w : vocab) f.model.AddEntry({{w}, lp(rng), 0});
  for (std::size_t i = 0; i < phrases.size(); ++i) {
    f.docs.push_back({static_cast<DocId>(i), phrases[i],
                      f.model.ScoreSequence(phrases[i])});
  }
  f.index = PhraseIndex::Build(f.docs);
  return f;
}

// Both stages over every document, written from the description.
std::vector<ScoredPhrase> ScanOracle(const Fixture& f, const Tokens& phrase,
                                     const SubstituterConfig& config) {
  struct Row {
    const PhraseDoc* doc;
    double similarity;
  };
  std::vector<Row> rows;
  for (const PhraseDoc& d : f.docs) {
    bool near = false;
    for (const auto& q : phrase) {
      for (const auto& w : d.tokens) {
        near = near ||
               NaiveLevenshtein(q, w) < config.distance.retrieval_threshold;
      }
    }
    if (!near) continue;
    const auto s = CombinedScore(phrase, d.tokens, f.lexicon, config.distance);
    if (s) rows.push_back({&d, *s});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    if (a.doc->tokens != b.doc->tokens) return a.doc->tokens < b.doc->tokens;
    return a.doc->docid < b.doc->docid;
  });
  if (rows.size() > config.pool_size) rows.resize(config.pool_size);
  bool has_identity = false;
  for (const Row& r : rows) has_identity |= r.doc->tokens == phrase;
  std::vector<std::pair<ScoredPhrase, double>> pool;
  for (const Row& r : rows) {
    pool.push_back({{r.doc->tokens, r.doc->lm_score}, r.similarity});
  }
  if (config.include_identity && !has_identity) {
    pool.push_back({{phrase, f.model.ScoreSequence(phrase)}, 1.0});
  }
  std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) {
    if (a.first.score != b.first.score) return a.first.score > b.first.score;
    if (a.second != b.second) return a.second > b.second;
    return a.first.tokens < b.first.tokens;
  });
  std::vector<ScoredPhrase> out;
  for (std::size_t i = 0; i < pool.size() && i < config.k; ++i) {
    out.push_back(pool[i].first);
  }
  return out;
}

TEST(FindBestSubTest, VerbatimDocIsReturned) {
  const Fixture f = MakeFixture({{"europe", "extreme"}, {"a", "b"}}, 1);
  SubstituterConfig config;
  config.pool_size = 10;
  const Substituter sub(f.index, f.model, f.lexicon, config);
  const std::vector<ScoredPhrase> out = sub.FindBestSub(Tokens{"a", "b"});
  EXPECT_TRUE(std::any_of(out.begin(), out.end(), [](const ScoredPhrase& p) {
    return p.tokens == Tokens{"a", "b"};
  }));
}

TEST(FindBestSubTest, SixPhraseToyIsSortedByScore) {
  const Fixture f = MakeFixture({{"europe", "extreme"},
                                 {"europe", "extremely"},
                                 {"extreme", "europe"},
                                 {"europa", "extreme"},
                                 {"europe", "is", "extreme"},
                                 {"extremes"}},
                                2);
  SubstituterConfig config;
  config.pool_size = 6;
  config.k = 6;
  const Substituter sub(f.index, f.model, f.lexicon, config);
  const Tokens query = {"europe", "extreem"};
  const std::vector<ScoredPhrase> out = sub.FindBestSub(query);
  EXPECT_EQ(out, ScanOracle(f, query, config));
  EXPECT_TRUE(std::is_sorted(out.begin(), out.end(),
                             [](const ScoredPhrase& a, const ScoredPhrase& b) {
                               return a.score > b.score;
                             }));
}

TEST(FindBestSubTest, TwentyFiveDocsMatchScanOracle) {
  std::mt19937_64 rng(3);
  const std::vector<std::string> words = {"alpha", "alpine", "beta", "bets",
                                          "gamma", "gamut", "delta", "dealt"};
  std::vector<Tokens> phrases;
  std::set<Tokens> seen;
  while (phrases.size() < 25) {
    Tokens p(1 + rng() % 3);
    for (auto& w : p) w = words[rng() % words.size()];
    if (seen.insert(p).second) phrases.push_back(p);
  }
  Fixture f = MakeFixture(phrases, 4);
  f.lexicon.AddSynset({"alpha", "delta"});
  for (const char* mode : {"A", "B", "C", "D"}) {
    SubstituterConfig config;
    config.pool_size = 25;
    config.distance.mode = *ParseWordOrderMode(mode);
    const Substituter sub(f.index, f.model, f.lexicon, config);
    for (int trial = 0; trial < 20; ++trial) {
      Tokens query(1 + rng() % 3);
      for (auto& w : query) w = words[rng() % words.size()];
      const std::vector<ScoredPhrase> out = sub.FindBestSub(query);
      EXPECT_LE(out.size(), config.k);
      EXPECT_FALSE(out.empty());
      EXPECT_EQ(out, ScanOracle(f, query, config)) << mode;
    }
  }
  SubstituterConfig config;
  config.pool_size = 25;
  const Substituter sub(f.index, f.model, f.lexicon, config);
  EXPECT_EQ(sub.FindBestSub(Tokens{"alpha", "beta"}).size(), 5u);
}

TEST(FindBestSubTest, SmallPoolMatchesOracle) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> words = {"red", "rod", "reed", "blue",
                                          "blew", "glue"};
  std::vector<Tokens> phrases;
  std::set<Tokens> seen;
  while (phrases.size() < 30) {
    Tokens p(1 + rng() % 3);
    for (auto& w : p) w = words[rng() % words.size()];
    if (seen.insert(p).second) phrases.push_back(p);
  }
  const Fixture f = MakeFixture(phrases, 6);
  SubstituterConfig config;
  config.pool_size = 7;
  config.k = 3;
  const Substituter sub(f.index, f.model, f.lexicon, config);
  for (int trial = 0; trial < 30; ++trial) {
    Tokens query(1 + rng() % 3);
    for (auto& w : query) w = words[rng() % words.size()];
    SubstituterStats stats;
    EXPECT_EQ(sub.FindBestSub(query, &stats), ScanOracle(f, query, config));
    EXPECT_LE(stats.pool, config.pool_size);
  }
}

TEST(FindBestSubTest, IdentityCanBeDisabled) {
  const Fixture f = MakeFixture({{"aaa", "bbb"}}, 7);
  SubstituterConfig config;
  config.include_identity = false;
  const Substituter sub(f.index, f.model, f.lexicon, config);
  EXPECT_TRUE(sub.FindBestSub(Tokens{"zzzzzz", "yyyyyy"}).empty());
  config.include_identity = true;
  const Substituter with(f.index, f.model, f.lexicon, config);
  EXPECT_EQ(with.FindBestSub(Tokens{"zzzzzz", "yyyyyy"}).size(), 1u);
}

TEST(FindBestSubTest, MaxLengthDeltaFiltersCandidates) {
  const Fixture f =
      MakeFixture({{"the", "cat"}, {"the", "cat", "sat", "down"}}, 8);
  SubstituterConfig config;
  config.max_length_delta = 0;
  const Substituter sub(f.index, f.model, f.lexicon, config);
  for (const ScoredPhrase& p : sub.FindBestSub(Tokens{"the", "cot"})) {
    EXPECT_EQ(p.tokens.size(), 2u);
  }
}

TEST(SubstituterConfigTest, KMustNotExceedPool) {
  SubstituterConfig config;
  config.k = 10;
  config.pool_size = 5;
  EXPECT_THROW(config.Validate(), std::invalid_argument);
  config.k = 0;
  EXPECT_THROW(config.Validate(), std::invalid_argument);
}

TEST(FindKBestCommonTest, Examples) {
  const Fixture f = MakeFixture({{"a", "b"}, {"a", "x"}, {"b", "c", "y"}}, 9);
  const Tokens phrase = {"a", "b", "c"};
  EXPECT_EQ(FindKBestCommon(f.docs, phrase),
            (std::vector<Tokens>{{"a", "b"}, {"b", "c", "y"}}));
  EXPECT_EQ(FindKBestCommon(f.index, phrase), (std::vector<DocId>{0, 2}));
  EXPECT_TRUE(FindKBestCommon(f.docs, Tokens{"q", "r"}).empty());
  EXPECT_TRUE(FindKBestCommon(f.index, Tokens{"a"}).empty());
}

TEST(FindKBestCommonTest, RepeatedWordCountsOnce) {
  const Fixture f = MakeFixture({{"a", "a"}, {"a", "b"}}, 10);
  EXPECT_EQ(FindKBestCommon(f.index, Tokens{"a", "a", "c"}),
            std::vector<DocId>{});
  EXPECT_EQ(FindKBestCommon(f.index, Tokens{"a", "b"}),
            std::vector<DocId>{1});
}

TEST(FindKBestCommonTest, IndexVersionEqualsBruteForce) {
  std::mt19937_64 rng(11);
  std::vector<Tokens> phrases(80);
  for (Tokens& p : phrases) {
    p.resize(1 + rng() % 4);
    for (auto& w : p) w = std::string(1, static_cast<char>('a' + rng() % 8));
  }
  const Fixture f = MakeFixture(phrases, 12);
  for (int trial = 0; trial < 50; ++trial) {
    Tokens q(1 + rng() % 5);
    for (auto& w : q) w = std::string(1, static_cast<char>('a' + rng() % 10));
    std::vector<Tokens> expected;
    for (const Tokens& p : phrases) {
      std::set<std::string> shared;
      for (const auto& w : p) {
        if (std::find(q.begin(), q.end(), w) != q.end()) shared.insert(w);
      }
      if (q.size() >= 2 && shared.size() >= 2) expected.push_back(p);
    }
    EXPECT_EQ(FindKBestCommon(f.docs, q), expected);
    std::vector<Tokens> via_index;
    for (DocId d : FindKBestCommon(f.index, q)) {
      via_index.push_back(f.index.doc(d).tokens);
    }
    EXPECT_EQ(via_index, expected);
  }
}

}  // namespace
}  // namespace phrasefix
