/*
 * Copyright 2026 The noisepulse Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <functional>

namespace noisepulse {

// Thread count used by parallel_for: the NOISEPULSE_THREADS environment
// variable if set, otherwise hardware concurrency.
unsigned worker_count();

// Runs fn(i) for i in [0, n) across worker threads with a static block
// partition. Every iteration must write only its own output slot; under
// that discipline results are identical to a serial loop regardless of
// thread count. Exceptions thrown by fn are collected and the first one
// is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace noisepulse
