// SPDX-License-Identifier: Apache-2.0
//
// chanchart - channel charting toolkit for massive MIMO channels
// Copyright (C) 2026 the chanchart authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace chanchart {

/// Resolve a thread-count request: 0 means "use the hardware concurrency".
inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

/// Run `fn(begin, end)` over a partition of [0, count) on up to `threads`
/// threads. Chunks are contiguous and fixed by (count, threads) only, and
/// every index is processed exactly once, so any element-wise computation
/// whose output slots are disjoint is deterministic for any thread count.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  unsigned n_threads = resolve_threads(threads);
  if (count == 0) return;
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, count));
  if (n_threads <= 1) {
    fn(std::size_t{0}, count);
    return;
  }

  std::size_t chunk = (count + n_threads - 1) / n_threads;
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (unsigned t = 0; t < n_threads; ++t) {
    std::size_t begin = static_cast<std::size_t>(t) * chunk;
    std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& worker : pool) worker.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace chanchart
