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

#ifndef RANKFAITH_DATA_SPLIT_H_
#define RANKFAITH_DATA_SPLIT_H_

#include <cstdint>
#include <span>
#include <vector>

namespace rankfaith::data {

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  std::uint64_t seed = 0;
  double ratio = 0.0;

  friend bool operator==(const SplitIndices&, const SplitIndices&) = default;
};

// Per-class shuffled split; each class contributes round(ratio * n_class)
// rows to train. Index lists are returned sorted ascending.
// Throws InvalidArgument for ratio outside (0, 1) and InsufficientClass when a
// class has fewer than two rows.
SplitIndices StratifiedSplit(std::span<const int> labels, double ratio, std::uint64_t seed);

// Assigns each position of `labels` to one of `folds` folds so that every
// fold's class counts differ by at most one. Returns fold id per position.
std::vector<int> StratifiedFolds(std::span<const int> labels, int folds, std::uint64_t seed);

}  // namespace rankfaith::data

#endif  // RANKFAITH_DATA_SPLIT_H_
