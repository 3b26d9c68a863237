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

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace phrasefix {
namespace {

void MergeInto(std::span<const DocId> a, std::span<const DocId> b,
               PostingsList& out, std::uint64_t& comparisons) {
  out.clear();
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    ++comparisons;
    if (a[i] < b[j]) {
      out.push_back(a[i++]);
    } else if (b[j] < a[i]) {
      out.push_back(b[j++]);
    } else {
      out.push_back(a[i]);
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), a.begin() + i, a.end());
  out.insert(out.end(), b.begin() + j, b.end());
}

std::string FormatDouble(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

[[noreturn]] void LoadError(std::size_t line, const std::string& what) {
  throw std::runtime_error("index line " + std::to_string(line) + ": " + what);
}

template <typename T>
T ParseNumber(std::string_view text, std::size_t line) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    LoadError(line, "bad number '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

}  // namespace

TrieDictionary::TrieDictionary() : nodes_(1) {}

WordId TrieDictionary::Insert(std::string_view word) {
  std::uint32_t node = 0;
  for (char ch : word) {
    auto& children = nodes_[node].children;
    auto it = std::lower_bound(
        children.begin(), children.end(), ch,
        [](const auto& child, char c) { return child.first < c; });
    if (it != children.end() && it->first == ch) {
      node = it->second;
      continue;
    }
    const auto next = static_cast<std::uint32_t>(nodes_.size());
    children.insert(it, {ch, next});
    nodes_.emplace_back();
    node = next;
  }
  if (nodes_[node].word < 0) {
    nodes_[node].word = static_cast<std::int64_t>(words_.size());
    words_.emplace_back(word);
  }
  return static_cast<WordId>(nodes_[node].word);
}

std::optional<WordId> TrieDictionary::Lookup(std::string_view word) const {
  std::uint32_t node = 0;
  for (char ch : word) {
    const auto& children = nodes_[node].children;
    auto it = std::lower_bound(
        children.begin(), children.end(), ch,
        [](const auto& child, char c) { return child.first < c; });
    if (it == children.end() || it->first != ch) return std::nullopt;
    node = it->second;
  }
  if (nodes_[node].word < 0) return std::nullopt;
  return static_cast<WordId>(nodes_[node].word);
}

std::vector<WordMatch> TrieDictionary::FuzzyMatches(std::string_view query,
                                                    int threshold,
                                                    std::size_t* visited) const {
  std::vector<WordMatch> matches;
  const std::size_t m = query.size();
  // rows[d] is the edit-distance row for the trie prefix of depth d.
  std::vector<std::vector<int>> rows(1, std::vector<int>(m + 1));
  std::iota(rows[0].begin(), rows[0].end(), 0);
  std::size_t expanded = 0;

  auto visit = [&](auto& self, std::uint32_t node, char ch,
                   std::size_t depth) -> void {
    ++expanded;
    if (rows.size() <= depth) rows.emplace_back(m + 1);
    const std::vector<int>& prev = rows[depth - 1];
    std::vector<int>& row = rows[depth];
    row[0] = prev[0] + 1;
    int best = row[0];
    for (std::size_t j = 1; j <= m; ++j) {
      const int cost = query[j - 1] == ch ? 0 : 1;
      row[j] = std::min({prev[j] + 1, row[j - 1] + 1, prev[j - 1] + cost});
      best = std::min(best, row[j]);
    }
    if (nodes_[node].word >= 0 && row[m] < threshold) {
      matches.push_back({static_cast<WordId>(nodes_[node].word), row[m]});
    }
    // Row minima never decrease with depth, so nothing below can match.
    if (best >= threshold) return;
    for (const auto& [next_ch, child] : nodes_[node].children) {
      self(self, child, next_ch, depth + 1);
    }
  };

  if (nodes_[0].word >= 0 && static_cast<int>(m) < threshold) {
    matches.push_back({static_cast<WordId>(nodes_[0].word), static_cast<int>(m)});
  }
  for (const auto& [ch, child] : nodes_[0].children) {
    visit(visit, child, ch, 1);
  }
  if (visited) *visited = expanded;
  std::sort(matches.begin(), matches.end(),
            [](const WordMatch& a, const WordMatch& b) { return a.word < b.word; });
  return matches;
}

PostingsList UnionPostings(std::span<const PostingsList* const> lists,
                           std::uint64_t* comparisons) {
  std::uint64_t count = 0;
  std::vector<std::span<const DocId>> views;
  views.reserve(lists.size());
  for (const PostingsList* list : lists) views.emplace_back(*list);

  std::vector<PostingsList> storage;
  while (views.size() > 1) {
    std::vector<PostingsList> merged((views.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < views.size(); i += 2) {
      MergeInto(views[i], views[i + 1], merged[i / 2], count);
    }
    if (views.size() % 2 == 1) {
      merged.back().assign(views.back().begin(), views.back().end());
    }
    storage = std::move(merged);
    views.assign(storage.begin(), storage.end());
  }
  if (comparisons) *comparisons += count;
  if (views.empty()) return {};
  return PostingsList(views.front().begin(), views.front().end());
}

PhraseIndex PhraseIndex::Build(std::vector<PhraseDoc> docs) {
  std::sort(docs.begin(), docs.end(),
            [](const PhraseDoc& a, const PhraseDoc& b) { return a.docid < b.docid; });
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (i > 0 && docs[i].docid == docs[i - 1].docid) {
      throw std::invalid_argument("duplicate docid " +
                                  std::to_string(docs[i].docid));
    }
    if (docs[i].docid != i) {
      throw std::invalid_argument("docids are not dense: missing " +
                                  std::to_string(i));
    }
    if (docs[i].tokens.empty()) {
      throw std::invalid_argument("document " + std::to_string(i) +
                                  " is empty");
    }
  }

  PhraseIndex index;
  index.docs_ = std::move(docs);
  index.doc_words_.reserve(index.docs_.size());
  for (const PhraseDoc& doc : index.docs_) {
    std::vector<WordId> ids;
    ids.reserve(doc.tokens.size());
    for (const auto& token : doc.tokens) {
      ids.push_back(index.dictionary_.Insert(token));
    }
    index.postings_.resize(index.dictionary_.size());
    std::vector<WordId> distinct = ids;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    for (WordId id : distinct) index.postings_[id].push_back(doc.docid);
    index.doc_words_.push_back(std::move(ids));
  }
  return index;
}

const PostingsList& PhraseIndex::Postings(std::string_view word) const {
  static const PostingsList kEmpty;
  const auto id = dictionary_.Lookup(word);
  return id ? postings_[*id] : kEmpty;
}

std::vector<std::string> PhraseIndex::ExpandQueryWord(std::string_view q,
                                                      int d_t) const {
  std::vector<std::string> words;
  for (const WordMatch& match : dictionary_.FuzzyMatches(q, d_t)) {
    words.push_back(dictionary_.Word(match.word));
  }
  std::sort(words.begin(), words.end());
  return words;
}

PostingsList PhraseIndex::Retrieve(TokenSpan query, int d_t,
                                   RetrievalStats* stats) const {
  std::vector<WordId> expanded;
  for (const auto& word : query) {
    for (const WordMatch& match : dictionary_.FuzzyMatches(word, d_t)) {
      expanded.push_back(match.word);
    }
  }
  std::sort(expanded.begin(), expanded.end());
  expanded.erase(std::unique(expanded.begin(), expanded.end()),
                 expanded.end());

  std::vector<const PostingsList*> lists;
  lists.reserve(expanded.size());
  std::size_t merged_length = 0;
  for (WordId id : expanded) {
    lists.push_back(&postings_[id]);
    merged_length += postings_[id].size();
  }
  std::uint64_t comparisons = 0;
  PostingsList out = UnionPostings(lists, &comparisons);
  if (stats) {
    stats->expanded_words = expanded.size();
    stats->merged_lists = lists.size();
    stats->merged_length = merged_length;
    stats->comparisons = comparisons;
  }
  return out;
}

void PhraseIndex::Save(std::ostream& out) const {
  out << "phrasefix-index\t1\n";
  out << "docs\t" << docs_.size() << '\n';
  for (const PhraseDoc& doc : docs_) {
    out << doc.docid << '\t' << FormatDouble(doc.lm_score) << '\t'
        << JoinTokens(doc.tokens) << '\n';
  }
  out << "postings\t" << dictionary_.size() << '\n';
  for (WordId id = 0; id < dictionary_.size(); ++id) {
    out << dictionary_.Word(id) << '\t';
    const PostingsList& list = postings_[id];
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i > 0) out << ' ';
      out << list[i];
    }
    out << '\n';
  }
  out << "end\n";
}

PhraseIndex PhraseIndex::Load(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next = [&]() -> std::string_view {
    if (!std::getline(in, line)) LoadError(line_no + 1, "unexpected end of file");
    ++line_no;
    return line;
  };

  if (next() != "phrasefix-index\t1") LoadError(line_no, "unknown header");
  auto fields = SplitTabs(next());
  if (fields.size() != 2 || fields[0] != "docs") {
    LoadError(line_no, "expected docs count");
  }
  const auto doc_count = ParseNumber<std::size_t>(fields[1], line_no);
  std::vector<PhraseDoc> docs;
  docs.reserve(doc_count);
  for (std::size_t i = 0; i < doc_count; ++i) {
    fields = SplitTabs(next());
    if (fields.size() != 3) LoadError(line_no, "expected 3 fields");
    PhraseDoc doc;
    doc.docid = ParseNumber<DocId>(fields[0], line_no);
    doc.lm_score = ParseNumber<double>(fields[1], line_no);
    doc.tokens = SplitWords(fields[2]);
    docs.push_back(std::move(doc));
  }

  PhraseIndex index;
  try {
    index = Build(std::move(docs));
  } catch (const std::invalid_argument& e) {
    LoadError(line_no, e.what());
  }

  fields = SplitTabs(next());
  if (fields.size() != 2 || fields[0] != "postings") {
    LoadError(line_no, "expected postings count");
  }
  const auto word_count = ParseNumber<std::size_t>(fields[1], line_no);
  if (word_count != index.dictionary_.size()) {
    LoadError(line_no, "dictionary size does not match the documents");
  }
  for (std::size_t i = 0; i < word_count; ++i) {
    fields = SplitTabs(next());
    if (fields.size() != 2) LoadError(line_no, "expected word and postings");
    PostingsList stored;
    for (const auto& id : SplitWords(fields[1])) {
      stored.push_back(ParseNumber<DocId>(id, line_no));
    }
    if (stored != index.Postings(fields[0])) {
      LoadError(line_no, "postings for '" + std::string(fields[0]) +
                             "' do not match the documents");
    }
  }
  if (next() != "end") LoadError(line_no, "expected end marker");
  return index;
}

std::vector<PhraseDoc> ExtractPhrases(const NgramModel& model,
                                      std::span<const int> orders) {
  if (orders.empty()) {
    throw std::invalid_argument("no n-gram orders selected for phrases");
  }
  std::vector<int> selected(orders.begin(), orders.end());
  std::sort(selected.begin(), selected.end());
  selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
  for (int n : selected) {
    if (n < 1 || n > model.order()) {
      throw std::invalid_argument("phrase order " + std::to_string(n) +
                                  " outside 1.." +
                                  std::to_string(model.order()));
    }
  }
  std::vector<PhraseDoc> docs;
  for (int n : selected) {
    for (const NgramEntry& entry : model.Entries(n)) {
      const auto id = static_cast<DocId>(docs.size());
      docs.push_back({id, entry.tokens, model.ScoreSequence(entry.tokens)});
    }
  }
  return docs;
}

std::vector<int> DefaultPhraseOrders(int model_order) {
  if (model_order <= 1) return {1};
  std::vector<int> orders;
  for (int n = 2; n <= model_order; ++n) orders.push_back(n);
  return orders;
}

}  // namespace phrasefix
