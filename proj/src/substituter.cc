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

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <unordered_set>

namespace phrasefix {
namespace {

// Lazily filled word relations between the query words and the dictionary.
class QueryWordCache {
 public:
  QueryWordCache(TokenSpan query, const TrieDictionary& dictionary,
                 const SynonymLexicon& lexicon)
      : query_(query),
        dictionary_(dictionary),
        lexicon_(lexicon),
        edit_(query.size() * dictionary.size(), -1),
        synonym_(query.size() * dictionary.size(), -1) {}

  int Edit(std::size_t i, WordId w) {
    int& slot = edit_[i * dictionary_.size() + w];
    if (slot < 0) slot = Levenshtein(query_[i], dictionary_.Word(w));
    return slot;
  }

  bool Synonym(std::size_t i, WordId w) {
    std::int8_t& slot = synonym_[i * dictionary_.size() + w];
    if (slot < 0) {
      slot = lexicon_.ShareSynset(query_[i], dictionary_.Word(w)) ? 1 : 0;
    }
    return slot == 1;
  }

 private:
  TokenSpan query_;
  const TrieDictionary& dictionary_;
  const SynonymLexicon& lexicon_;
  std::vector<int> edit_;
  std::vector<std::int8_t> synonym_;
};

}  // namespace

bool BetterScored(const ScoredPhrase& a, const ScoredPhrase& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.tokens < b.tokens;
}

void SubstituterConfig::Validate() const {
  if (k < 1 || k > pool_size) {
    throw std::invalid_argument("substituter needs 1 <= k <= T");
  }
  distance.Validate();
}

Substituter::Substituter(const PhraseIndex& index, const NgramModel& model,
                         const SynonymLexicon& lexicon,
                         SubstituterConfig config)
    : index_(index), model_(model), lexicon_(lexicon), config_(config) {
  config_.Validate();
}

std::vector<Substituter::Match> Substituter::MatchPool(
    TokenSpan phrase, SubstituterStats* stats) const {
  if (phrase.empty()) return {};
  const PostingsList retrieved =
      index_.Retrieve(phrase, config_.distance.retrieval_threshold);
  QueryWordCache cache(phrase, index_.dictionary(), lexicon_);
  const TrieDictionary& dictionary = index_.dictionary();

  std::vector<Match> matches;
  matches.reserve(retrieved.size());
  std::size_t rejected = 0;
  PairTable table;
  for (DocId id : retrieved) {
    const std::span<const WordId> words = index_.DocWords(id);
    if (config_.max_length_delta >= 0) {
      const auto delta = static_cast<long>(words.size()) -
                         static_cast<long>(phrase.size());
      if (std::abs(delta) > config_.max_length_delta) continue;
    }
    table.Reset(phrase.size(), words.size());
    for (std::size_t i = 0; i < phrase.size(); ++i) {
      for (std::size_t j = 0; j < words.size(); ++j) {
        table.Set(i, j, cache.Edit(i, words[j]),
                  std::max(phrase[i].size(), dictionary.Word(words[j]).size()),
                  cache.Synonym(i, words[j]));
      }
    }
    const std::optional<double> similarity =
        CombinedScore(table, config_.distance);
    if (!similarity) {
      ++rejected;
      continue;
    }
    matches.push_back({id, *similarity});
  }

  auto better = [this](const Match& a, const Match& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    const Tokens& ta = index_.doc(a.doc).tokens;
    const Tokens& tb = index_.doc(b.doc).tokens;
    if (ta != tb) return ta < tb;
    return a.doc < b.doc;
  };
  if (matches.size() > config_.pool_size) {
    std::nth_element(matches.begin(), matches.begin() + config_.pool_size,
                     matches.end(), better);
    matches.resize(config_.pool_size);
  }
  std::sort(matches.begin(), matches.end(), better);
  if (stats) {
    stats->retrieved = retrieved.size();
    stats->rejected = rejected;
    stats->pool = matches.size();
  }
  return matches;
}

std::vector<ScoredPhrase> Substituter::FindBestSub(
    TokenSpan phrase, SubstituterStats* stats) const {
  if (phrase.empty()) return {};
  struct Candidate {
    ScoredPhrase phrase;
    double similarity;
  };
  std::vector<Candidate> candidates;
  bool has_identity = false;
  for (const Match& match : MatchPool(phrase, stats)) {
    const PhraseDoc& doc = index_.doc(match.doc);
    if (std::equal(doc.tokens.begin(), doc.tokens.end(), phrase.begin(),
                   phrase.end())) {
      has_identity = true;
    }
    candidates.push_back({{doc.tokens, doc.lm_score}, match.similarity});
  }
  if (config_.include_identity && !has_identity) {
    Tokens tokens(phrase.begin(), phrase.end());
    const double score = model_.ScoreSequence(tokens);
    candidates.push_back({{std::move(tokens), score}, 1.0});
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.phrase.score != b.phrase.score) {
                return a.phrase.score > b.phrase.score;
              }
              if (a.similarity != b.similarity) {
                return a.similarity > b.similarity;
              }
              return a.phrase.tokens < b.phrase.tokens;
            });
  if (candidates.size() > config_.k) candidates.resize(config_.k);
  std::vector<ScoredPhrase> out;
  out.reserve(candidates.size());
  for (Candidate& c : candidates) out.push_back(std::move(c.phrase));
  return out;
}

std::vector<Tokens> FindKBestCommon(std::span<const PhraseDoc> docs,
                                    TokenSpan phrase) {
  std::vector<Tokens> out;
  if (phrase.size() < 2) return out;
  const std::unordered_set<std::string> types(phrase.begin(), phrase.end());
  for (const PhraseDoc& doc : docs) {
    std::unordered_set<std::string> shared;
    for (const auto& word : doc.tokens) {
      if (types.count(word)) shared.insert(word);
    }
    if (shared.size() >= 2) out.push_back(doc.tokens);
  }
  return out;
}

std::vector<DocId> FindKBestCommon(const PhraseIndex& index,
                                   TokenSpan phrase) {
  if (phrase.size() < 2) return {};
  std::vector<WordId> types;
  for (const auto& word : phrase) {
    if (auto id = index.dictionary().Lookup(word)) types.push_back(*id);
  }
  std::sort(types.begin(), types.end());
  types.erase(std::unique(types.begin(), types.end()), types.end());
  if (types.size() < 2) return {};

  // Postings hold each docid once per word, so a docid appearing twice in
  // the concatenation shares two distinct words.
  std::vector<DocId> all;
  for (WordId id : types) {
    const PostingsList& list = index.Postings(id);
    all.insert(all.end(), list.begin(), list.end());
  }
  std::sort(all.begin(), all.end());
  std::vector<DocId> out;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j] == all[i]) ++j;
    if (j - i >= 2) out.push_back(all[i]);
    i = j;
  }
  return out;
}

}  // namespace phrasefix
