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

#include "phrasefix/evaluation.h"

#include <cmath>
#include <cstdlib>
#include <map>
#include <random>
#include <stdexcept>

namespace phrasefix {
namespace {

std::map<Tokens, std::size_t> CountNgrams(TokenSpan tokens, std::size_t n) {
  std::map<Tokens, std::size_t> counts;
  if (n == 0 || tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[Tokens(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

// Reference length closest to the candidate length, preferring the shorter
// one on ties.
std::size_t ClosestLength(std::size_t length,
                          std::span<const Tokens> references) {
  std::size_t best = references.front().size();
  for (const Tokens& ref : references) {
    const auto d = [&](std::size_t r) {
      return r > length ? r - length : length - r;
    };
    if (d(ref.size()) < d(best) ||
        (d(ref.size()) == d(best) && ref.size() < best)) {
      best = ref.size();
    }
  }
  return best;
}

class NoiseRng {
 public:
  explicit NoiseRng(std::uint64_t seed) : engine_(seed) {}
  // Uniform enough for noise generation and identical on every platform,
  // unlike the standard distributions.
  std::size_t Below(std::size_t bound) { return engine_() % bound; }

 private:
  std::mt19937_64 engine_;
};

char RandomLetter(NoiseRng& rng) {
  return static_cast<char>('a' + rng.Below(26));
}

void ApplyTypo(std::string& word, NoiseRng& rng) {
  std::size_t op = rng.Below(3);
  if (op == 1 && word.size() < 2) op = 2;
  switch (op) {
    case 0:
      word.insert(word.begin() + rng.Below(word.size() + 1), RandomLetter(rng));
      break;
    case 1:
      word.erase(word.begin() + rng.Below(word.size()));
      break;
    default: {
      const std::size_t at = rng.Below(word.size());
      char replacement = RandomLetter(rng);
      if (replacement == word[at]) {
        replacement = static_cast<char>('a' + (replacement - 'a' + 1) % 26);
      }
      word[at] = replacement;
    }
  }
}

}  // namespace

NgramMatches ModifiedPrecision(TokenSpan candidate,
                               std::span<const Tokens> references,
                               std::size_t n) {
  NgramMatches matches;
  if (n == 0 || candidate.size() < n) return matches;
  std::map<Tokens, std::size_t> max_ref;
  for (const Tokens& ref : references) {
    for (const auto& [gram, count] : CountNgrams(ref, n)) {
      std::size_t& slot = max_ref[gram];
      slot = std::max(slot, count);
    }
  }
  for (const auto& [gram, count] : CountNgrams(candidate, n)) {
    auto it = max_ref.find(gram);
    if (it != max_ref.end()) matches.clipped += std::min(count, it->second);
    matches.total += count;
  }
  return matches;
}

double Bleu(std::span<const Tokens> candidates,
            std::span<const std::vector<Tokens>> references, std::size_t max_n,
            BleuStats* stats) {
  if (candidates.size() != references.size()) {
    throw std::invalid_argument("candidate and reference counts differ");
  }
  if (candidates.empty()) throw std::invalid_argument("empty corpus");
  if (max_n == 0) throw std::invalid_argument("max_n must be positive");

  BleuStats s;
  s.orders.assign(max_n, {});
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (references[i].empty()) {
      throw std::invalid_argument("segment " + std::to_string(i) +
                                  " has no reference");
    }
    s.candidate_length += candidates[i].size();
    s.reference_length +=
        ClosestLength(candidates[i].size(), references[i]);
    for (std::size_t n = 1; n <= max_n; ++n) {
      const NgramMatches m =
          ModifiedPrecision(candidates[i], references[i], n);
      s.orders[n - 1].clipped += m.clipped;
      s.orders[n - 1].total += m.total;
    }
  }

  double score = 0.0;
  bool zero = s.candidate_length == 0;
  double log_sum = 0.0;
  for (const NgramMatches& m : s.orders) {
    if (m.clipped == 0) {
      zero = true;
      break;
    }
    log_sum += std::log(static_cast<double>(m.clipped) /
                        static_cast<double>(m.total));
  }
  if (s.candidate_length > 0 && s.candidate_length <= s.reference_length) {
    s.brevity_penalty =
        std::exp(1.0 - static_cast<double>(s.reference_length) /
                           static_cast<double>(s.candidate_length));
  }
  if (!zero) {
    score = s.brevity_penalty *
            std::exp(log_sum / static_cast<double>(max_n));
  }
  if (stats) *stats = std::move(s);
  return score;
}

double CorpusPerplexity(const NgramModel& model,
                        std::span<const Tokens> sentences) {
  if (sentences.empty()) throw std::invalid_argument("no sentences");
  double loss = 0.0;
  std::size_t terms = 0;
  for (const Tokens& sentence : sentences) {
    const NgramModel::Log2Loss l = model.PerplexityTerms(sentence);
    loss += l.negative_log2;
    terms += l.terms;
  }
  if (terms == 0) {
    throw std::invalid_argument("no sentence reaches the model order");
  }
  return std::exp2(loss / static_cast<double>(terms));
}

Tokens InjectNoise(TokenSpan sentence, const NoiseSpec& spec,
                   const NoiseResources& resources, NoiseReport* report) {
  Tokens out(sentence.begin(), sentence.end());
  NoiseRng rng(spec.seed);
  NoiseReport applied;

  for (std::size_t i = 0; i < spec.swap_adjacent; ++i) {
    if (out.size() < 2) break;
    const std::size_t at = rng.Below(out.size() - 1);
    std::swap(out[at], out[at + 1]);
    ++applied.swaps;
  }
  for (std::size_t i = 0; i < spec.delete_word; ++i) {
    if (out.size() < 2) break;
    out.erase(out.begin() + rng.Below(out.size()));
    ++applied.deletions;
  }
  for (std::size_t i = 0; i < spec.substitute_word; ++i) {
    if (out.empty()) break;
    std::string& word = out[rng.Below(out.size())];
    std::vector<std::string> synonyms;
    if (resources.lexicon) synonyms = resources.lexicon->SynonymsOf(word);
    if (!synonyms.empty()) {
      word = synonyms[rng.Below(synonyms.size())];
      ++applied.substitutions;
      continue;
    }
    const auto& vocab = resources.vocabulary;
    if (vocab.empty()) continue;
    std::size_t pick = rng.Below(vocab.size());
    if (vocab[pick] == word) pick = (pick + 1) % vocab.size();
    if (vocab[pick] == word) continue;
    word = vocab[pick];
    ++applied.substitutions;
  }
  for (std::size_t i = 0; i < spec.typo_char; ++i) {
    if (out.empty()) break;
    ApplyTypo(out[rng.Below(out.size())], rng);
    ++applied.typos;
  }
  if (report) *report = applied;
  return out;
}

}  // namespace phrasefix
