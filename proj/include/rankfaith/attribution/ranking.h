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

#ifndef RANKFAITH_ATTRIBUTION_RANKING_H_
#define RANKFAITH_ATTRIBUTION_RANKING_H_

#include <string>
#include <vector>

#include "rankfaith/attribution/attribution.h"
#include "rankfaith/data/dataset.h"

namespace rankfaith::attribution {

// Attributions summed over each original feature's encoded columns, in group
// order.
struct GroupedAttribution {
  std::vector<std::string> names;
  std::vector<double> values;
};

struct RankedFeature {
  std::string name;
  double value = 0.0;

  friend bool operator==(const RankedFeature&, const RankedFeature&) = default;
};

// Full-length ranking, |value| descending, exact magnitude ties broken by
// name (lexicographic ascending).
using RankedExplanation = std::vector<RankedFeature>;

// Throws InvalidArgument unless `groups` partitions the attribution columns.
// Each group's sum runs over its columns in listed order, so summing the
// grouped values in group order equals summing phi in that same nested order.
GroupedAttribution GroupAttributions(const AttributionVector& attr, const data::GroupIndex& groups);

RankedExplanation RankFeatures(const GroupedAttribution& grouped);

// First k names of a ranking (all of it when shorter).
std::vector<std::string> TopNames(const RankedExplanation& ranking, std::size_t k);

}  // namespace rankfaith::attribution

#endif  // RANKFAITH_ATTRIBUTION_RANKING_H_
