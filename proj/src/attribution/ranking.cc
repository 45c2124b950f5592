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

#include "rankfaith/attribution/ranking.h"

#include <algorithm>
#include <cmath>

namespace rankfaith::attribution {

GroupedAttribution GroupAttributions(const AttributionVector& attr, const data::GroupIndex& groups) {
  data::ValidatePartition(groups, attr.values.size());
  GroupedAttribution out;
  out.names.reserve(groups.size());
  out.values.reserve(groups.size());
  for (const auto& g : groups) {
    double sum = 0.0;
    for (int c : g.columns) sum += attr.values[c];
    out.names.push_back(g.name);
    out.values.push_back(sum);
  }
  return out;
}

RankedExplanation RankFeatures(const GroupedAttribution& grouped) {
  RankedExplanation ranking;
  ranking.reserve(grouped.names.size());
  for (std::size_t i = 0; i < grouped.names.size(); ++i) {
    ranking.push_back({grouped.names[i], grouped.values[i]});
  }
  std::sort(ranking.begin(), ranking.end(), [](const RankedFeature& a, const RankedFeature& b) {
    const double ma = std::fabs(a.value);
    const double mb = std::fabs(b.value);
    if (ma != mb) return ma > mb;
    return a.name < b.name;
  });
  return ranking;
}

std::vector<std::string> TopNames(const RankedExplanation& ranking, std::size_t k) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < std::min(k, ranking.size()); ++i) names.push_back(ranking[i].name);
  return names;
}

}  // namespace rankfaith::attribution
