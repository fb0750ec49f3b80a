// Copyright 2026 The shadowfit authors
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

namespace shadowfit {

/// Worker-thread budget: hardware concurrency, capped by the
/// SHADOWFIT_THREADS environment variable when it parses to a positive
/// integer. Always at least 1. Read per call so tests can toggle the cap.
int max_threads();

/// Run body(0..count-1) across up to max_threads() workers in contiguous
/// chunks. Callers must make each index write only its own slot; reductions
/// happen after the join, so results never depend on the thread count.
/// The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& body);

}  // namespace shadowfit
