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

#include "phrasefix/ngram_model.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>

namespace phrasefix {
namespace {

std::string Key(TokenSpan tokens) { return JoinTokens(tokens); }

bool ParseDouble(std::string_view text, double* value) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, *value);
  return ec == std::errc() && ptr == end;
}

std::string FormatDouble(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Matches "\N-grams:" and returns N, or 0.
int SectionOrder(std::string_view line) {
  if (line.size() < 9 || line.front() != '\\' || !line.ends_with("-grams:")) {
    return 0;
  }
  int n = 0;
  const char* begin = line.data() + 1;
  const char* end = line.data() + line.size() - 7;
  auto [ptr, ec] = std::from_chars(begin, end, n);
  if (ec != std::errc() || ptr != end || n < 1) return 0;
  return n;
}

}  // namespace

ArpaError::ArpaError(Kind kind, std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? "ARPA line " + std::to_string(line) +
                                        ": " + what
                                  : "ARPA: " + what),
      kind_(kind),
      line_(line) {}

NgramModel::NgramModel(int order, double oov_logprob)
    : order_(order), oov_logprob_(oov_logprob) {
  if (order < 1) throw std::invalid_argument("model order must be >= 1");
  tables_.resize(order + 1);
}

void NgramModel::AddEntry(NgramEntry entry) {
  const auto n = static_cast<int>(entry.tokens.size());
  if (n < 1 || n > order_) {
    throw std::invalid_argument("n-gram length " + std::to_string(n) +
                                " outside 1.." + std::to_string(order_));
  }
  if (std::any_of(entry.tokens.begin(), entry.tokens.end(),
                  [](const std::string& t) { return t.empty(); })) {
    throw std::invalid_argument("n-gram contains an empty token");
  }
  if (!(entry.logprob <= 0.0)) {
    throw std::invalid_argument("logprob must be <= 0");
  }
  Table& table = tables_[n];
  std::string key = Key(entry.tokens);
  if (n == 1) vocabulary_.insert(entry.tokens.front());
  auto it = table.index.find(key);
  if (it != table.index.end()) {
    table.entries[it->second] = std::move(entry);
    return;
  }
  table.index.emplace(std::move(key), table.entries.size());
  table.entries.push_back(std::move(entry));
}

bool NgramModel::RemoveEntry(TokenSpan tokens) {
  const auto n = static_cast<int>(tokens.size());
  if (n < 1 || n > order_) return false;
  Table& table = tables_[n];
  auto it = table.index.find(Key(tokens));
  if (it == table.index.end()) return false;
  const std::size_t slot = it->second;
  table.index.erase(it);
  if (slot + 1 != table.entries.size()) {
    table.entries[slot] = std::move(table.entries.back());
    table.index[Key(table.entries[slot].tokens)] = slot;
  }
  table.entries.pop_back();
  if (n == 1) vocabulary_.erase(tokens.front());
  return true;
}

bool NgramModel::SetBackoff(TokenSpan tokens, double backoff) {
  const auto n = static_cast<int>(tokens.size());
  if (n < 1 || n > order_) return false;
  Table& table = tables_[n];
  auto it = table.index.find(Key(tokens));
  if (it == table.index.end()) return false;
  table.entries[it->second].backoff = backoff;
  return true;
}

const NgramEntry* NgramModel::Find(TokenSpan tokens) const {
  const auto n = static_cast<int>(tokens.size());
  if (n < 1 || n > order_) return nullptr;
  const Table& table = tables_[n];
  auto it = table.index.find(Key(tokens));
  return it == table.index.end() ? nullptr : &table.entries[it->second];
}

const std::vector<NgramEntry>& NgramModel::Entries(int n) const {
  if (n < 1 || n > order_) {
    throw std::out_of_range("no n-gram table of length " + std::to_string(n));
  }
  return tables_[n].entries;
}

double NgramModel::ScoreWord(std::string_view word, TokenSpan history) const {
  if (!Contains(word)) return oov_logprob_;
  if (history.size() > static_cast<std::size_t>(order_ - 1)) {
    history = history.last(order_ - 1);
  }
  double backoff = 0.0;
  std::string key;
  while (true) {
    key = Key(history);
    if (!history.empty()) key.push_back(' ');
    key.append(word);
    const Table& table = tables_[history.size() + 1];
    auto it = table.index.find(key);
    if (it != table.index.end()) {
      return backoff + table.entries[it->second].logprob;
    }
    if (history.empty()) return oov_logprob_;
    if (const NgramEntry* context = Find(history)) backoff += context->backoff;
    history = history.subspan(1);
  }
}

double NgramModel::ScoreSequence(TokenSpan tokens) const {
  if (tokens.empty()) {
    throw std::invalid_argument("cannot score an empty sequence");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < tokens.size(); ++j) {
    total += ScoreWord(tokens[j], tokens.first(j));
  }
  return total;
}

NgramModel::Log2Loss NgramModel::PerplexityTerms(TokenSpan tokens) const {
  Log2Loss loss;
  const auto n = static_cast<std::size_t>(order_);
  for (std::size_t i = n - 1; i < tokens.size(); ++i) {
    const double log10p = ScoreWord(tokens[i], tokens.first(i));
    loss.negative_log2 -= log10p * std::log2(10.0);
    ++loss.terms;
  }
  return loss;
}

double NgramModel::Perplexity(TokenSpan tokens) const {
  if (tokens.size() < static_cast<std::size_t>(order_)) {
    throw std::invalid_argument(
        "perplexity needs at least as many words as the model order");
  }
  const Log2Loss loss = PerplexityTerms(tokens);
  return std::exp2(loss.negative_log2 / static_cast<double>(loss.terms));
}

NgramModel ParseArpa(std::istream& in) {
  using Kind = ArpaError::Kind;
  std::string raw;
  std::size_t line_no = 0;

  bool seen_data = false;
  while (std::getline(in, raw)) {
    ++line_no;
    if (Trim(raw) == "\\data\\") {
      seen_data = true;
      break;
    }
  }
  if (!seen_data) throw ArpaError(Kind::kMissingHeader, 0, "no \\data\\ marker");

  std::map<int, std::size_t> declared;
  int first_section = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = Trim(raw);
    if (line.empty()) continue;
    if (line.front() == '\\') {
      first_section = SectionOrder(line);
      if (first_section == 0) {
        throw ArpaError(Kind::kBadHeader, line_no,
                        "unexpected line in header: " + std::string(line));
      }
      break;
    }
    int n = 0;
    std::size_t count = 0;
    const auto eq = line.find('=');
    if (!line.starts_with("ngram ") || eq == std::string_view::npos) {
      throw ArpaError(Kind::kBadHeader, line_no,
                      "expected 'ngram N=count': " + std::string(line));
    }
    const std::string_view lhs = Trim(line.substr(6, eq - 6));
    const std::string_view rhs = Trim(line.substr(eq + 1));
    auto r1 = std::from_chars(lhs.data(), lhs.data() + lhs.size(), n);
    auto r2 = std::from_chars(rhs.data(), rhs.data() + rhs.size(), count);
    if (r1.ec != std::errc() || r1.ptr != lhs.data() + lhs.size() ||
        r2.ec != std::errc() || r2.ptr != rhs.data() + rhs.size() || n < 1 ||
        declared.count(n)) {
      throw ArpaError(Kind::kBadHeader, line_no,
                      "bad count declaration: " + std::string(line));
    }
    declared[n] = count;
  }
  if (declared.empty()) {
    throw ArpaError(Kind::kBadHeader, line_no, "no n-gram counts declared");
  }
  const int order = declared.rbegin()->first;
  for (int n = 1; n <= order; ++n) {
    if (!declared.count(n)) {
      throw ArpaError(Kind::kBadHeader, line_no,
                      "missing count for order " + std::to_string(n));
    }
  }
  if (first_section == 0) {
    throw ArpaError(Kind::kMissingEnd, 0, "input ends inside the header");
  }

  NgramModel model(order);
  int section = first_section;
  std::size_t in_section = 0;
  auto close_section = [&](std::size_t at_line) {
    if (in_section != declared[section]) {
      throw ArpaError(Kind::kCountMismatch, at_line,
                      std::to_string(section) + "-gram section has " +
                          std::to_string(in_section) + " entries, header "
                          "declares " + std::to_string(declared[section]));
    }
  };
  if (section != 1) {
    throw ArpaError(Kind::kSectionOrder, line_no,
                    "expected \\1-grams: section first");
  }

  bool ended = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = Trim(raw);
    if (line.empty()) continue;
    if (line == "\\end\\") {
      close_section(line_no);
      if (section != order) {
        throw ArpaError(Kind::kCountMismatch, line_no,
                        "sections for orders " + std::to_string(section + 1) +
                            ".." + std::to_string(order) + " are missing");
      }
      ended = true;
      break;
    }
    if (line.front() == '\\') {
      const int next = SectionOrder(line);
      if (next != section + 1 || next > order) {
        throw ArpaError(Kind::kSectionOrder, line_no,
                        "unexpected section " + std::string(line) +
                            " after " + std::to_string(section) + "-grams");
      }
      close_section(line_no);
      section = next;
      in_section = 0;
      continue;
    }

    Tokens fields = SplitWords(line);
    const auto n = static_cast<std::size_t>(section);
    if (fields.size() != n + 1 && fields.size() != n + 2) {
      throw ArpaError(Kind::kMalformedLine, line_no,
                      "expected " + std::to_string(n) + " words: " +
                          std::string(line));
    }
    NgramEntry entry;
    if (!ParseDouble(fields[0], &entry.logprob)) {
      throw ArpaError(Kind::kBadNumber, line_no,
                      "non-numeric logprob '" + fields[0] + "'");
    }
    if (entry.logprob > 0.0) {
      throw ArpaError(Kind::kPositiveLogprob, line_no,
                      "logprob " + fields[0] + " is positive");
    }
    if (fields.size() == n + 2 && !ParseDouble(fields.back(), &entry.backoff)) {
      throw ArpaError(Kind::kBadNumber, line_no,
                      "non-numeric backoff '" + fields.back() + "'");
    }
    entry.tokens.assign(fields.begin() + 1, fields.begin() + 1 + n);
    if (section > 1) {
      for (const auto& word : entry.tokens) {
        if (!model.Contains(word)) {
          throw ArpaError(Kind::kUnknownWord, line_no,
                          "word '" + word + "' has no unigram");
        }
      }
    }
    if (++in_section > declared[section]) {
      throw ArpaError(Kind::kCountMismatch, line_no,
                      "more " + std::to_string(section) +
                          "-grams than declared");
    }
    model.AddEntry(std::move(entry));
  }
  if (!ended) throw ArpaError(Kind::kMissingEnd, 0, "no \\end\\ marker");
  return model;
}

void WriteArpa(const NgramModel& model, std::ostream& out) {
  out << "\\data\\\n";
  for (int n = 1; n <= model.order(); ++n) {
    out << "ngram " << n << '=' << model.NgramCount(n) << '\n';
  }
  for (int n = 1; n <= model.order(); ++n) {
    out << "\n\\" << n << "-grams:\n";
    for (const NgramEntry& e : model.Entries(n)) {
      out << FormatDouble(e.logprob) << '\t' << JoinTokens(e.tokens);
      if (n < model.order()) out << '\t' << FormatDouble(e.backoff);
      out << '\n';
    }
  }
  out << "\n\\end\\\n";
}

NgramModel TrainWittenBell(const std::vector<Tokens>& corpus, int order) {
  if (order < 1) throw std::invalid_argument("model order must be >= 1");
  // Sorted maps keep the emitted ARPA deterministic.
  std::vector<std::map<Tokens, std::size_t>> counts(order + 1);
  std::size_t total_words = 0;
  for (const Tokens& sentence : corpus) {
    total_words += sentence.size();
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      for (int n = 1; n <= order && i + n <= sentence.size(); ++n) {
        ++counts[n][Tokens(sentence.begin() + i, sentence.begin() + i + n)];
      }
    }
  }
  if (total_words == 0) {
    throw std::invalid_argument("cannot train on an empty corpus");
  }

  NgramModel model(order);
  for (const auto& [tokens, count] : counts[1]) {
    model.AddEntry({tokens, std::log10(static_cast<double>(count) /
                                       static_cast<double>(total_words)),
                    0.0});
  }

  for (int n = 2; n <= order; ++n) {
    struct HistoryStats {
      std::size_t tokens = 0;  // c(h): occurrences of h followed by a word
      std::size_t types = 0;   // T(h): distinct followers
    };
    std::map<Tokens, HistoryStats> histories;
    for (const auto& [tokens, count] : counts[n]) {
      HistoryStats& h = histories[Tokens(tokens.begin(), tokens.end() - 1)];
      h.tokens += count;
      ++h.types;
    }
    std::vector<NgramEntry> entries;
    entries.reserve(counts[n].size());
    for (const auto& [tokens, count] : counts[n]) {
      const TokenSpan span(tokens);
      const HistoryStats& h = histories[Tokens(tokens.begin(), tokens.end() - 1)];
      const double lower =
          std::pow(10.0, model.ScoreWord(tokens.back(), span.subspan(1, n - 2)));
      const double prob =
          (static_cast<double>(count) + static_cast<double>(h.types) * lower) /
          static_cast<double>(h.tokens + h.types);
      entries.push_back({tokens, std::log10(std::min(prob, 1.0)), 0.0});
    }
    for (NgramEntry& e : entries) model.AddEntry(std::move(e));
    // Unseen followers of h receive T(h) / (c(h) + T(h)) of the mass,
    // spread in proportion to the lower-order distribution.
    for (const auto& [history, h] : histories) {
      model.SetBackoff(history,
                       std::log10(static_cast<double>(h.types) /
                                  static_cast<double>(h.tokens + h.types)));
    }
  }
  return model;
}

}  // namespace phrasefix
