// Copyright 2026 The stylomatch Authors. All Rights Reserved.
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

#ifndef STYLOMATCH_TOOLS_CLI_COMMANDS_H_
#define STYLOMATCH_TOOLS_CLI_COMMANDS_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace stylomatch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the `stylomatch` tool. Subcommands: clean, train, eval,
// calibrate, scan, embed, synth. Any subcommand accepts --config FILE, a
// JSON object whose keys mirror the long flag names; flags given on the
// command line take precedence.
int Run(int argc, char** argv, std::ostream& out, std::ostream& err);
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace stylomatch::cli

#endif  // STYLOMATCH_TOOLS_CLI_COMMANDS_H_
