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

#include "rankfaith/harness/sampling.h"

#include <algorithm>

#include "rankfaith/errors.h"
#include "rankfaith/util/rng.h"

namespace rankfaith::harness {

CellSample StratifiedSample(std::span<const std::int64_t> ids, std::span<const int> labels,
                            std::span<const double> probabilities, double threshold,
                            std::size_t per_cell, std::uint64_t seed) {
  if (ids.size() != labels.size() || ids.size() != probabilities.size()) {
    throw DimensionMismatch("ids, labels and probabilities differ in length");
  }
  if (per_cell < 1) throw InvalidArgument("per_cell must be positive");
  constexpr models::ConfusionCell kOrder[] = {models::ConfusionCell::kTruePositive, models::ConfusionCell::kTrueNegative,
                                              models::ConfusionCell::kFalsePositive, models::ConfusionCell::kFalseNegative};
  std::map<std::string, std::vector<std::int64_t>> members;
  for (auto cell : kOrder) members[models::CellName(cell)];
  for (std::size_t i = 0; i < ids.size(); ++i) {
    members[models::CellName(models::CellOf(labels[i], probabilities[i], threshold))].push_back(ids[i]);
  }

  CellSample sample;
  for (auto& [name, list] : members) sample.cell_counts[name] = list.size();
  for (auto cell : kOrder) {
    const std::string name = models::CellName(cell);
    if (members[name].size() < per_cell) throw UndersizedCell(name, members[name].size(), per_cell);
  }
  for (std::size_t c = 0; c < std::size(kOrder); ++c) {
    const std::string name = models::CellName(kOrder[c]);
    auto list = members[name];
    std::sort(list.begin(), list.end());
    auto rng = util::Rng::Derive(seed, c);
    rng.Shuffle(list);
    list.resize(per_cell);
    std::sort(list.begin(), list.end());
    for (auto id : list) sample.cell_of[id] = name;
    sample.ids.insert(sample.ids.end(), list.begin(), list.end());
    sample.by_cell[name] = std::move(list);
  }
  std::sort(sample.ids.begin(), sample.ids.end());
  return sample;
}

}  // namespace rankfaith::harness
