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

#include "rankfaith/data/split.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "rankfaith/errors.h"
#include "rankfaith/util/rng.h"

namespace rankfaith::data {

namespace {

std::vector<std::size_t> ClassRows(std::span<const int> labels, int cls) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == cls) rows.push_back(i);
  }
  return rows;
}

}  // namespace

SplitIndices StratifiedSplit(std::span<const int> labels, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw InvalidArgument("split ratio must be in (0, 1), got " + std::to_string(ratio));
  }
  SplitIndices split;
  split.seed = seed;
  split.ratio = ratio;
  util::Rng rng(seed);
  for (int cls : {0, 1}) {
    auto rows = ClassRows(labels, cls);
    if (rows.size() < 2) {
      throw InsufficientClass("class " + std::to_string(cls) + " has " +
                              std::to_string(rows.size()) + " rows; need at least 2");
    }
    rng.Shuffle(rows);
    auto n_train = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(rows.size())));
    n_train = std::clamp<std::size_t>(n_train, 1, rows.size() - 1);
    split.train.insert(split.train.end(), rows.begin(), rows.begin() + n_train);
    split.test.insert(split.test.end(), rows.begin() + n_train, rows.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

std::vector<int> StratifiedFolds(std::span<const int> labels, int folds, std::uint64_t seed) {
  if (folds < 2) throw InvalidArgument("need at least 2 folds");
  std::vector<int> assignment(labels.size(), 0);
  util::Rng rng(seed);
  // Continue the round-robin across classes so fold sizes stay balanced too.
  int next = 0;
  for (int cls : {0, 1}) {
    auto rows = ClassRows(labels, cls);
    if (rows.size() < static_cast<std::size_t>(folds)) {
      throw InsufficientClass("class " + std::to_string(cls) + " has fewer rows than folds");
    }
    rng.Shuffle(rows);
    for (std::size_t row : rows) {
      assignment[row] = next;
      next = (next + 1) % folds;
    }
  }
  return assignment;
}

}  // namespace rankfaith::data
