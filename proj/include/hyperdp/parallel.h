// Copyright 2026 The HyperDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HYPERDP_PARALLEL_H_
#define HYPERDP_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace hyperdp {

// Calls body(i) for every i in [0, count) on up to `threads` worker threads
// (the calling thread included). Work items are claimed dynamically, so
// callers must write results into per-index slots and reduce afterwards to
// stay independent of scheduling.
void ParallelFor(size_t count, int threads,
                 const std::function<void(size_t)>& body);

// Thread count from HYPERDP_THREADS when set to a positive integer,
// otherwise `fallback`.
int ThreadsFromEnvironment(int fallback);

}  // namespace hyperdp

#endif  // HYPERDP_PARALLEL_H_
