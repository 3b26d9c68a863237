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

// Backoff n-gram language models: ARPA reading and writing, scoring,
// perplexity and a Witten-Bell trainer. All stored values are log10.

#ifndef PHRASEFIX_NGRAM_MODEL_H_
#define PHRASEFIX_NGRAM_MODEL_H_

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "phrasefix/text.h"

namespace phrasefix {

inline constexpr double kDefaultOovLogprob = -99.0;

struct NgramEntry {
  Tokens tokens;
  double logprob = 0.0;
  double backoff = 0.0;
};

class ArpaError : public std::runtime_error {
 public:
  enum class Kind {
    kMissingHeader,
    kBadHeader,
    kCountMismatch,
    kBadNumber,
    kSectionOrder,
    kMalformedLine,
    kPositiveLogprob,
    kUnknownWord,
    kMissingEnd,
  };

  ArpaError(Kind kind, std::size_t line, const std::string& what);

  Kind kind() const { return kind_; }
  // 1-based line number in the input; 0 when the error is at end of input.
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

// Immutable once built; concurrent readers need no coordination.
class NgramModel {
 public:
  explicit NgramModel(int order, double oov_logprob = kDefaultOovLogprob);

  int order() const { return order_; }
  double oov_logprob() const { return oov_logprob_; }
  void set_oov_logprob(double logprob) { oov_logprob_ = logprob; }

  // Inserts or replaces an n-gram. Unigrams extend the vocabulary.
  // Throws std::invalid_argument for an out-of-range length, an empty token
  // or a positive logprob.
  void AddEntry(NgramEntry entry);
  // Returns false when the n-gram was not stored.
  bool RemoveEntry(TokenSpan tokens);
  bool SetBackoff(TokenSpan tokens, double backoff);

  const NgramEntry* Find(TokenSpan tokens) const;
  bool Contains(std::string_view word) const {
    return vocabulary_.count(std::string(word)) > 0;
  }

  // Entries of length n (1-based), in insertion order.
  const std::vector<NgramEntry>& Entries(int n) const;
  std::size_t NgramCount(int n) const { return Entries(n).size(); }
  const std::unordered_set<std::string>& vocabulary() const {
    return vocabulary_;
  }

  // log10 P(word | history). Histories longer than order-1 are truncated to
  // their most recent words. Unknown words score the OOV floor.
  double ScoreWord(std::string_view word, TokenSpan history) const;

  // Sum of ScoreWord over positions with no sentence boundary markers.
  // Throws std::invalid_argument on an empty sequence.
  double ScoreSequence(TokenSpan tokens) const;

  // Per-word log2 loss summed over positions order..l (1-based), returned
  // together with the number of summed positions.
  struct Log2Loss {
    double negative_log2 = 0.0;
    std::size_t terms = 0;
  };
  Log2Loss PerplexityTerms(TokenSpan tokens) const;

  // 2^LP with LP averaged over the l-order+1 summed positions.
  // Throws std::invalid_argument when the sentence is shorter than the order.
  double Perplexity(TokenSpan tokens) const;

 private:
  struct Table {
    std::vector<NgramEntry> entries;
    std::unordered_map<std::string, std::size_t> index;
  };

  int order_;
  double oov_logprob_;
  std::vector<Table> tables_;
  std::unordered_set<std::string> vocabulary_;
};

// Parses the ARPA text layout. Fields may be separated by tabs or spaces.
// Throws ArpaError naming the offending line.
NgramModel ParseArpa(std::istream& in);

// Writes ARPA with tab separators and shortest round-trip decimal values.
// Backoff fields are emitted for every order below the model order.
void WriteArpa(const NgramModel& model, std::ostream& out);

// Trains an interpolated Witten-Bell model stored in backoff form, so every
// history distributes exactly unit mass over the vocabulary. No boundary
// tokens are added. Throws std::invalid_argument on an empty corpus or
// order < 1.
NgramModel TrainWittenBell(const std::vector<Tokens>& corpus, int order);

}  // namespace phrasefix

#endif  // PHRASEFIX_NGRAM_MODEL_H_
