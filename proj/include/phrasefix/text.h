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

#ifndef PHRASEFIX_TEXT_H_
#define PHRASEFIX_TEXT_H_

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace phrasefix {

// An ordered list of lowercase words without embedded whitespace.
using Tokens = std::vector<std::string>;
using TokenSpan = std::span<const std::string>;

// Lowercases ASCII letters, drops apostrophes and treats every other
// punctuation character as a word separator. "Value-added, isn't" becomes
// {"value", "added", "isnt"}.
Tokens Tokenize(std::string_view line);

// Splits on whitespace only; the line is taken as already normalized.
Tokens SplitWords(std::string_view line);

std::string JoinTokens(TokenSpan tokens, char separator = ' ');

// Reads one sentence per line, tokenizing each. Blank lines are kept as
// empty token lists so line numbers stay aligned with the input.
std::vector<Tokens> ReadSentences(std::istream& in);

}  // namespace phrasefix

#endif  // PHRASEFIX_TEXT_H_
