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

#include "phrasefix/text.h"

#include <cctype>
#include <istream>

namespace phrasefix {

Tokens Tokenize(std::string_view line) {
  Tokens tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (char ch : line) {
    const auto uch = static_cast<unsigned char>(ch);
    if (ch == '\'') continue;
    if (std::isspace(uch) || std::ispunct(uch)) {
      flush();
    } else {
      current.push_back(static_cast<char>(std::tolower(uch)));
    }
  }
  flush();
  return tokens;
}

Tokens SplitWords(std::string_view line) {
  Tokens tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() &&
           std::isspace(static_cast<unsigned char>(line[pos]))) {
      ++pos;
    }
    std::size_t end = pos;
    while (end < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[end]))) {
      ++end;
    }
    if (end > pos) tokens.emplace_back(line.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

std::string JoinTokens(TokenSpan tokens, char separator) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(separator);
    out += tokens[i];
  }
  return out;
}

std::vector<Tokens> ReadSentences(std::istream& in) {
  std::vector<Tokens> sentences;
  std::string line;
  while (std::getline(in, line)) sentences.push_back(Tokenize(line));
  return sentences;
}

}  // namespace phrasefix
