// Copyright 2026 The shormagic Authors
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

#pragma once

#include <cstddef>
#include <functional>

namespace shormagic {

/// Worker count: SHORMAGIC_THREADS if set and positive, otherwise
/// std::thread::hardware_concurrency().
unsigned default_thread_count();

/// Calls body(i) for i in [0, count) on up to `threads` workers. Items are
/// claimed dynamically; callers write results into slot i so the outcome
/// never depends on scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body,
                  unsigned threads = 0);

}  // namespace shormagic
