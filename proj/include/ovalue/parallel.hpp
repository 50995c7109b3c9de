/*
 * Copyright 2026 The ovalue Authors.
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

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ovalue {

/// Runs body(begin, end) over contiguous chunks of [0, count) on up to
/// `threads` threads. Chunk boundaries depend only on `count` and
/// `threads`; callers write results to disjoint slots so the output does
/// not depend on scheduling.
template <typename Body>
void parallel_for_chunks(std::size_t count, unsigned threads, Body&& body) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
  if (workers == 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(count, w * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back([&, w, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Number of indices in [0, count) for which pred(i) holds.
template <typename Pred>
std::size_t parallel_count(std::size_t count, unsigned threads, Pred&& pred) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
  std::vector<std::size_t> partial(workers, 0);
  const std::size_t chunk = count == 0 ? 0 : (count + workers - 1) / workers;
  parallel_for_chunks(workers, static_cast<unsigned>(workers),
                      [&](std::size_t wb, std::size_t we) {
                        for (std::size_t w = wb; w < we; ++w) {
                          const std::size_t begin = std::min(count, w * chunk);
                          const std::size_t end = std::min(count, begin + chunk);
                          std::size_t local = 0;
                          for (std::size_t i = begin; i < end; ++i) {
                            local += pred(i) ? 1 : 0;
                          }
                          partial[w] = local;
                        }
                      });
  std::size_t total = 0;
  for (std::size_t p : partial) total += p;
  return total;
}

}  // namespace ovalue
