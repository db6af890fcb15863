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
#ifndef PHIRISK_PARALLEL_H_
#define PHIRISK_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace phirisk {

// Worker cap: PHIRISK_THREADS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
std::size_t thread_budget();

// Runs body(i) for i in [0, n) on up to thread_budget() threads. Callers write
// results by index, so output order never depends on scheduling. The
// exception thrown for the lowest index, if any, is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace phirisk

#endif  // PHIRISK_PARALLEL_H_
