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

#ifndef PHRASEFIX_SYNONYM_LEXICON_H_
#define PHRASEFIX_SYNONYM_LEXICON_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace phrasefix {

// Synonym sets loaded from a plain text file, one synset per line with
// space-separated lowercase words. A word may appear in several synsets.
class SynonymLexicon {
 public:
  SynonymLexicon() = default;

  static SynonymLexicon Load(std::istream& in);

  // Appends a synset and returns its id. Duplicate words within the set are
  // collapsed; empty sets are ignored and return -1.
  int AddSynset(std::vector<std::string> words);

  std::size_t size() const { return synsets_.size(); }
  const std::vector<std::string>& Synset(int id) const { return synsets_[id]; }

  // Ascending synset ids containing the word; empty for unknown words.
  const std::vector<int>& SynsetsOf(std::string_view word) const;

  // Identical words always share; otherwise some synset must hold both.
  bool ShareSynset(std::string_view a, std::string_view b) const;

  // Words sharing at least one synset with the given word, excluding itself,
  // in ascending order.
  std::vector<std::string> SynonymsOf(std::string_view word) const;

 private:
  std::vector<std::vector<std::string>> synsets_;
  std::unordered_map<std::string, std::vector<int>> membership_;
};

}  // namespace phrasefix

#endif  // PHRASEFIX_SYNONYM_LEXICON_H_
