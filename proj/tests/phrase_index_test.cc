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

#include "phrasefix/phrase_index.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "oracles.h"
#include "phrasefix/ngram_model.h"

namespace phrasefix {
namespace {

using testing::NaiveLevenshtein;
using testing::RandomWord;

std::vector<PhraseDoc> Docs(const std::vector<Tokens>& phrases) {
  std::vector<PhraseDoc> docs;
  for (std::size_t i = 0; i < phrases.size(); ++i) {
    docs.push_back({static_cast<DocId>(i), phrases[i], -1.0 * (i + 1)});
  }
  return docs;
}

std::vector<PhraseDoc> RandomDocs(std::mt19937_64& rng, std::size_t count,
                                  std::size_t vocabulary) {
  std::vector<std::string> words;
  std::set<std::string> seen;
  while (words.size() < vocabulary) {
    std::string w = RandomWord(rng, 2, 6, 6);
    if (seen.insert(w).second) words.push_back(w);
  }
  std::vector<Tokens> phrases(count);
  for (Tokens& p : phrases) {
    p.resize(1 + rng() % 4);
    for (std::string& w : p) w = words[rng() % words.size()];
  }
  return Docs(phrases);
}

TEST(TrieDictionaryTest, InsertAndLookup) {
  TrieDictionary dict;
  EXPECT_EQ(dict.Insert("cat"), 0u);
  EXPECT_EQ(dict.Insert("car"), 1u);
  EXPECT_EQ(dict.Insert("cat"), 0u);
  EXPECT_EQ(dict.size(), 2u);
  EXPECT_EQ(dict.Lookup("car"), 1u);
  EXPECT_FALSE(dict.Lookup("ca").has_value());
  EXPECT_EQ(dict.Word(1), "car");
}

TEST(TrieDictionaryTest, FuzzyMatchesEqualLinearScan) {
  std::mt19937_64 rng(21);
  TrieDictionary dict;
  std::vector<std::string> words;
  while (dict.size() < 200) {
    std::string w = RandomWord(rng, 1, 8, 8);
    if (!dict.Lookup(w)) {
      dict.Insert(w);
      words.push_back(w);
    }
  }
  for (int trial = 0; trial < 300; ++trial) {
    const std::string q = RandomWord(rng, 0, 9, 8);
    for (int d_t = 1; d_t <= 3; ++d_t) {
      std::vector<std::pair<WordId, int>> expected;
      for (WordId id = 0; id < words.size(); ++id) {
        const int d = NaiveLevenshtein(q, words[id]);
        if (d < d_t) expected.emplace_back(id, d);
      }
      std::vector<std::pair<WordId, int>> got;
      for (const WordMatch& m : dict.FuzzyMatches(q, d_t)) {
        got.emplace_back(m.word, m.distance);
      }
      EXPECT_EQ(got, expected) << q << " " << d_t;
    }
  }
}

TEST(TrieDictionaryTest, PruningVisitsFewerNodesThanFullTrie) {
  std::mt19937_64 rng(22);
  TrieDictionary dict;
  for (int i = 0; i < 500; ++i) dict.Insert(RandomWord(rng, 6, 10, 20));
  std::size_t tight = 0, loose = 0;
  dict.FuzzyMatches("abcdefgh", 1, &tight);
  dict.FuzzyMatches("abcdefgh", 12, &loose);
  EXPECT_LT(tight, loose);
}

TEST(UnionPostingsTest, SortedUnionWithBoundedComparisons) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = rng() % 9;
    std::vector<PostingsList> lists(m);
    std::set<DocId> expected;
    std::size_t total = 0;
    for (PostingsList& l : lists) {
      std::set<DocId> s;
      const std::size_t len = rng() % 30;
      while (s.size() < len) s.insert(static_cast<DocId>(rng() % 100));
      l.assign(s.begin(), s.end());
      expected.insert(s.begin(), s.end());
      total += l.size();
    }
    std::vector<const PostingsList*> ptrs;
    for (const PostingsList& l : lists) ptrs.push_back(&l);
    std::uint64_t comparisons = 0;
    const PostingsList got = UnionPostings(ptrs, &comparisons);
    EXPECT_EQ(got, PostingsList(expected.begin(), expected.end()));
    const double rounds = m > 1 ? std::ceil(std::log2(m)) : 0;
    EXPECT_LE(static_cast<double>(comparisons), total * rounds);
  }
}

TEST(PhraseIndexTest, TwoDocPostings) {
  const PhraseIndex index = PhraseIndex::Build(Docs({{"a", "b"}, {"b", "c"}}));
  EXPECT_EQ(index.Postings("b"), (PostingsList{0, 1}));
  EXPECT_EQ(index.Postings("a"), (PostingsList{0}));
  EXPECT_EQ(index.Postings("c"), (PostingsList{1}));
  EXPECT_TRUE(index.Postings("zz").empty());
}

TEST(PhraseIndexTest, SingleDoc) {
  const PhraseIndex index = PhraseIndex::Build(Docs({{"x", "y", "x"}}));
  EXPECT_EQ(index.Postings("x"), (PostingsList{0}));
  EXPECT_EQ(index.Postings("y"), (PostingsList{0}));
}

TEST(PhraseIndexTest, BuildRejectsBadDocs) {
  std::vector<PhraseDoc> dup = Docs({{"a"}, {"b"}});
  dup[1].docid = 0;
  EXPECT_THROW(PhraseIndex::Build(dup), std::invalid_argument);
  std::vector<PhraseDoc> gap = Docs({{"a"}, {"b"}});
  gap[1].docid = 5;
  EXPECT_THROW(PhraseIndex::Build(gap), std::invalid_argument);
}

TEST(PhraseIndexTest, PostingsReconstructMembership) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 30; ++trial) {
    const std::vector<PhraseDoc> docs = RandomDocs(rng, 50, 30);
    const PhraseIndex index = PhraseIndex::Build(docs);
    std::set<std::pair<std::string, DocId>> from_docs, from_postings;
    for (const PhraseDoc& d : docs) {
      for (const std::string& w : d.tokens) from_docs.emplace(w, d.docid);
    }
    for (WordId w = 0; w < index.dictionary().size(); ++w) {
      const PostingsList& list = index.Postings(w);
      EXPECT_TRUE(std::is_sorted(list.begin(), list.end()));
      EXPECT_EQ(std::adjacent_find(list.begin(), list.end()), list.end());
      for (DocId d : list) from_postings.emplace(index.dictionary().Word(w), d);
    }
    EXPECT_EQ(from_docs, from_postings);
  }
}

TEST(PhraseIndexTest, ExpandQueryWord) {
  const PhraseIndex index = PhraseIndex::Build(Docs({{"cat"}, {"dog"}}));
  EXPECT_EQ(index.ExpandQueryWord("cart", 3),
            std::vector<std::string>{"cat"});
  EXPECT_EQ(index.ExpandQueryWord("dog", 1), std::vector<std::string>{"dog"});
}

TEST(PhraseIndexTest, RetrieveExamples) {
  const PhraseIndex index =
      PhraseIndex::Build(Docs({{"the", "cat"}, {"a", "dog"}, {"cat", "food"}}));
  const PostingsList out = index.Retrieve(Tokens{"cat", "zzzzzz"}, 1);
  EXPECT_EQ(out, (PostingsList{0, 2}));
  EXPECT_TRUE(index.Retrieve(Tokens{"qwertyuiop"}, 3).empty());
}

TEST(PhraseIndexTest, RetrieveEqualsBruteForce) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 40; ++trial) {
    const std::vector<PhraseDoc> docs = RandomDocs(rng, 100, 40);
    const PhraseIndex index = PhraseIndex::Build(docs);
    Tokens query(1 + rng() % 4);
    for (std::string& w : query) w = RandomWord(rng, 2, 6, 6);
    for (int d_t = 1; d_t <= 3; ++d_t) {
      PostingsList expected;
      for (const PhraseDoc& d : docs) {
        bool hit = false;
        for (const std::string& q : query) {
          for (const std::string& w : d.tokens) {
            hit = hit || NaiveLevenshtein(q, w) < d_t;
          }
        }
        if (hit) expected.push_back(d.docid);
      }
      RetrievalStats stats;
      EXPECT_EQ(index.Retrieve(query, d_t, &stats), expected);
    }
  }
}

TEST(PhraseIndexTest, SaveLoadRoundTrip) {
  std::mt19937_64 rng(26);
  const PhraseIndex index = PhraseIndex::Build(RandomDocs(rng, 60, 25));
  std::stringstream buffer;
  index.Save(buffer);
  const PhraseIndex back = PhraseIndex::Load(buffer);
  ASSERT_EQ(back.size(), index.size());
  for (DocId d = 0; d < index.size(); ++d) {
    EXPECT_EQ(back.doc(d).tokens, index.doc(d).tokens);
    EXPECT_DOUBLE_EQ(back.doc(d).lm_score, index.doc(d).lm_score);
  }
  for (int i = 0; i < 10; ++i) {
    const Tokens q = {RandomWord(rng, 2, 6, 6), RandomWord(rng, 2, 6, 6)};
    EXPECT_EQ(back.Retrieve(q, 3), index.Retrieve(q, 3));
  }
}

TEST(PhraseIndexTest, LoadRejectsCorruptInput) {
  const PhraseIndex index = PhraseIndex::Build(Docs({{"a", "b"}, {"b", "c"}}));
  std::stringstream buffer;
  index.Save(buffer);
  std::string text = buffer.str();
  const std::size_t pos = text.find("b\t0 1");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 5, "b\t1");
  std::istringstream in(text);
  EXPECT_THROW(PhraseIndex::Load(in), std::runtime_error);
  std::istringstream truncated(buffer.str().substr(0, 30));
  EXPECT_THROW(PhraseIndex::Load(truncated), std::runtime_error);
}

NgramModel ThreeBigramModel() {
  NgramModel model(2);
  for (const char* w : {"a", "b", "c"}) model.AddEntry({{w}, -0.5, -0.1});
  model.AddEntry({{"a", "b"}, -0.2, 0});
  model.AddEntry({{"b", "c"}, -0.3, 0});
  model.AddEntry({{"c", "a"}, -0.4, 0});
  return model;
}

TEST(ExtractPhrasesTest, SelectedOrders) {
  const NgramModel model = ThreeBigramModel();
  const std::vector<int> bigrams = {2};
  const std::vector<int> both = {1, 2};
  EXPECT_EQ(ExtractPhrases(model, bigrams).size(), 3u);
  const std::vector<PhraseDoc> docs = ExtractPhrases(model, both);
  EXPECT_EQ(docs.size(), 6u);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    EXPECT_EQ(docs[i].docid, i);
    EXPECT_DOUBLE_EQ(docs[i].lm_score, model.ScoreSequence(docs[i].tokens));
  }
  EXPECT_THROW(ExtractPhrases(model, std::vector<int>{}),
               std::invalid_argument);
  EXPECT_THROW(ExtractPhrases(model, std::vector<int>{3}),
               std::invalid_argument);
}

TEST(ExtractPhrasesTest, DefaultOrders) {
  EXPECT_EQ(DefaultPhraseOrders(4), (std::vector<int>{2, 3, 4}));
  EXPECT_EQ(DefaultPhraseOrders(1), (std::vector<int>{1}));
}

}  // namespace
}  // namespace phrasefix
