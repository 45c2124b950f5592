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

#ifndef RANKFAITH_HARNESS_SAMPLING_H_
#define RANKFAITH_HARNESS_SAMPLING_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rankfaith/models/metrics.h"

namespace rankfaith::harness {

struct CellSample {
  std::map<std::string, std::size_t> cell_counts;  // population per cell
  std::map<std::string, std::vector<std::int64_t>> by_cell;
  std::map<std::int64_t, std::string> cell_of;
  std::vector<std::int64_t> ids;  // all sampled ids, ascending
};

// Draws per_cell ids uniformly from each of TP, TN, FP, FN at `threshold`.
// Throws UndersizedCell for the first cell (in that order) with fewer than
// per_cell members.
CellSample StratifiedSample(std::span<const std::int64_t> ids, std::span<const int> labels,
                            std::span<const double> probabilities, double threshold,
                            std::size_t per_cell, std::uint64_t seed);

}  // namespace rankfaith::harness

#endif  // RANKFAITH_HARNESS_SAMPLING_H_
