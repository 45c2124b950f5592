/*
 * Copyright 2026 The rankfaith Authors.
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

#ifndef RANKFAITH_UTIL_PARALLEL_H_
#define RANKFAITH_UTIL_PARALLEL_H_

#include <cstdint>
#include <exception>

namespace rankfaith::util {

// OpenMP parallel loop over [0, n) that rethrows the first exception raised by
// `fn` after the loop instead of terminating. Iterations must be independent.
template <typename Fn>
void ParallelFor(std::int64_t n, Fn&& fn) {
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
#pragma omp critical(rankfaith_parallel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace rankfaith::util

#endif  // RANKFAITH_UTIL_PARALLEL_H_
