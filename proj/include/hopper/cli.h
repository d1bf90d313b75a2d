// Copyright 2026 The Passive Hopper Authors
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


// Command-line front end with the subcommands simulate, find-gait, sweep and
// analyze.

#ifndef HOPPER_CLI_H_
#define HOPPER_CLI_H_

#include <iosfwd>

namespace hopper {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNotConverged = 1;
inline constexpr int kExitConfigError = 2;

// Runs the command line and returns the process exit code. Progress goes to
// `out`, diagnostics to `err`.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace hopper

#endif  // HOPPER_CLI_H_
