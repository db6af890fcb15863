// Copyright 2026 The phirisk Authors.
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
#ifndef PHIRISK_CLI_H_
#define PHIRISK_CLI_H_

#include <iosfwd>

namespace phirisk {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitConvergence = 3;  // outputs are still written

// Runs the phirisk command line: stats, prepare, cv, synth and report.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace phirisk

#endif  // PHIRISK_CLI_H_
