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

#ifndef PHRASEFIX_TOOLS_CLI_H_
#define PHRASEFIX_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace phrasefix {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDataError = 2;

// Runs the phrasefix command line. `args` excludes the program name.
// Records and reports go to `out` unless --out names a file; diagnostics go
// to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace phrasefix

#endif  // PHRASEFIX_TOOLS_CLI_H_
