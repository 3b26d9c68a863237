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

#include "phrasefix/synonym_lexicon.h"

#include <algorithm>
#include <istream>

#include "phrasefix/text.h"

namespace phrasefix {

SynonymLexicon SynonymLexicon::Load(std::istream& in) {
  SynonymLexicon lexicon;
  std::string line;
  while (std::getline(in, line)) lexicon.AddSynset(SplitWords(line));
  return lexicon;
}

int SynonymLexicon::AddSynset(std::vector<std::string> words) {
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  if (words.empty()) return -1;
  const int id = static_cast<int>(synsets_.size());
  for (const auto& word : words) membership_[word].push_back(id);
  synsets_.push_back(std::move(words));
  return id;
}

const std::vector<int>& SynonymLexicon::SynsetsOf(std::string_view word) const {
  static const std::vector<int> kNone;
  auto it = membership_.find(std::string(word));
  return it == membership_.end() ? kNone : it->second;
}

bool SynonymLexicon::ShareSynset(std::string_view a, std::string_view b) const {
  if (a == b) return true;
  const auto& x = SynsetsOf(a);
  const auto& y = SynsetsOf(b);
  // Both lists are ascending.
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

std::vector<std::string> SynonymLexicon::SynonymsOf(
    std::string_view word) const {
  std::vector<std::string> out;
  for (int id : SynsetsOf(word)) {
    for (const auto& other : synsets_[id]) {
      if (other != word) out.push_back(other);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace phrasefix
