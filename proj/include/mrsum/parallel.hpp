// Copyright 2026 The mrsum Authors
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

#pragma once

#include <cstddef>
#include <functional>

namespace mrsum {

// Worker count used by the parallel sections of the library. Results never
// depend on this value.
void set_num_threads(int n);
int num_threads();

// Runs body(begin, end) over contiguous chunks of [0, count). Chunks are
// processed concurrently when more than one worker is configured; callers
// write into disjoint output slots and combine them in index order.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace mrsum
