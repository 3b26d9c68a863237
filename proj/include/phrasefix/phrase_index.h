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

// Every phrase stored in the language model becomes a document. Documents
// are indexed by word through sorted postings lists, and the word
// dictionary is a trie that supports edit-distance bounded lookup.

#ifndef PHRASEFIX_PHRASE_INDEX_H_
#define PHRASEFIX_PHRASE_INDEX_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phrasefix/ngram_model.h"
#include "phrasefix/text.h"

namespace phrasefix {

using DocId = std::uint32_t;
using WordId = std::uint32_t;
// Strictly ascending docids.
using PostingsList = std::vector<DocId>;

struct PhraseDoc {
  DocId docid = 0;
  Tokens tokens;
  double lm_score = 0.0;
};

struct WordMatch {
  WordId word = 0;
  int distance = 0;
};

class TrieDictionary {
 public:
  TrieDictionary();

  // Returns the id of the word, inserting it when new. Ids are dense in
  // insertion order.
  WordId Insert(std::string_view word);
  std::optional<WordId> Lookup(std::string_view word) const;

  std::size_t size() const { return words_.size(); }
  const std::string& Word(WordId id) const { return words_[id]; }

  // Every word w with Levenshtein(query, w) < threshold, ordered by id.
  // A branch is abandoned once no extension can get below the threshold.
  // `visited`, when given, receives the number of trie nodes expanded.
  std::vector<WordMatch> FuzzyMatches(std::string_view query, int threshold,
                                      std::size_t* visited = nullptr) const;

 private:
  struct Node {
    std::vector<std::pair<char, std::uint32_t>> children;  // sorted by char
    std::int64_t word = -1;
  };

  std::vector<Node> nodes_;
  std::vector<std::string> words_;
};

struct RetrievalStats {
  std::size_t expanded_words = 0;
  std::size_t merged_lists = 0;
  std::size_t merged_length = 0;  // sum of input postings lengths
  std::uint64_t comparisons = 0;  // docid comparisons during the union
};

// Sorted union of sorted lists, merged pairwise in rounds so each element
// takes part in at most ceil(log2(lists)) linear merges.
PostingsList UnionPostings(std::span<const PostingsList* const> lists,
                           std::uint64_t* comparisons = nullptr);

class PhraseIndex {
 public:
  // Requires docids to be exactly 0..M-1 in some order and every document
  // to be non-empty. Throws std::invalid_argument otherwise.
  static PhraseIndex Build(std::vector<PhraseDoc> docs);

  // Line-oriented persistence:
  //   phrasefix-index <TAB> 1
  //   docs <TAB> M, then M lines docid <TAB> score <TAB> tokens
  //   postings <TAB> W, then W lines word <TAB> space-separated docids
  //   end
  void Save(std::ostream& out) const;
  // Throws std::runtime_error on malformed or inconsistent input.
  static PhraseIndex Load(std::istream& in);

  std::size_t size() const { return docs_.size(); }
  const std::vector<PhraseDoc>& docs() const { return docs_; }
  const PhraseDoc& doc(DocId id) const { return docs_[id]; }
  std::span<const WordId> DocWords(DocId id) const {
    return doc_words_[id];
  }
  const TrieDictionary& dictionary() const { return dictionary_; }

  const PostingsList& Postings(WordId word) const { return postings_[word]; }
  // Empty for words outside the dictionary.
  const PostingsList& Postings(std::string_view word) const;

  // Dictionary words within distance < d_t of q, sorted.
  std::vector<std::string> ExpandQueryWord(std::string_view q, int d_t) const;

  // Union of the postings of every dictionary word close to some query word.
  PostingsList Retrieve(TokenSpan query, int d_t,
                        RetrievalStats* stats = nullptr) const;

 private:
  std::vector<PhraseDoc> docs_;
  std::vector<std::vector<WordId>> doc_words_;
  TrieDictionary dictionary_;
  std::vector<PostingsList> postings_;
};

// One document per stored n-gram whose length is in `orders`, scored with
// the model. Throws std::invalid_argument for an empty selection or an
// order outside 1..model.order().
std::vector<PhraseDoc> ExtractPhrases(const NgramModel& model,
                                      std::span<const int> orders);

// Orders 2..N, or {1} for a unigram model.
std::vector<int> DefaultPhraseOrders(int model_order);

}  // namespace phrasefix

#endif  // PHRASEFIX_PHRASE_INDEX_H_
