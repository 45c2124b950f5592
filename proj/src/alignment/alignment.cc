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

#include "rankfaith/alignment/alignment.h"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "rankfaith/errors.h"

namespace rankfaith::alignment {

namespace {

std::span<const std::string> Top(std::span<const std::string> list, int k) {
  return list.first(std::min<std::size_t>(static_cast<std::size_t>(k), list.size()));
}

// Counts inversions of `v` by merge sort; sorts `v` in place.
std::uint64_t CountInversions(std::vector<int>& v, std::vector<int>& scratch, std::size_t lo,
                              std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t count = CountInversions(v, scratch, lo, mid) + CountInversions(v, scratch, mid, hi);
  std::size_t i = lo, j = mid, out = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      count += mid - i;
      scratch[out++] = v[j++];
    } else {
      scratch[out++] = v[i++];
    }
  }
  while (i < mid) scratch[out++] = v[i++];
  while (j < hi) scratch[out++] = v[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
            scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return count;
}

}  // namespace

double OverlapAtK(std::span<const std::string> reference, std::span<const std::string> hypothesis,
                  int k) {
  if (k < 1) throw InvalidArgument("K must be at least 1");
  if (static_cast<std::size_t>(k) > reference.size()) {
    throw InvalidArgument("K=" + std::to_string(k) + " exceeds reference length " +
                          std::to_string(reference.size()));
  }
  const auto ref_top = Top(reference, k);
  const std::unordered_set<std::string> ref_set(ref_top.begin(), ref_top.end());
  std::unordered_set<std::string> counted;
  for (const auto& name : Top(hypothesis, k)) {
    if (ref_set.count(name)) counted.insert(name);
  }
  return static_cast<double>(counted.size()) / k;
}

std::optional<double> KendallTauTopK(std::span<const std::string> reference,
                                     std::span<const std::string> hypothesis, int k) {
  if (k < 2) throw InvalidArgument("Kendall tau needs K >= 2");
  std::unordered_map<std::string, int> hyp_rank;
  const auto hyp_top = Top(hypothesis, k);
  for (std::size_t i = 0; i < hyp_top.size(); ++i) hyp_rank.emplace(hyp_top[i], static_cast<int>(i));

  // Hypothesis ranks of the shared items, listed in reference order.
  std::vector<int> ranks;
  for (const auto& name : Top(reference, k)) {
    const auto it = hyp_rank.find(name);
    if (it != hyp_rank.end()) ranks.push_back(it->second);
  }
  const std::size_t s = ranks.size();
  if (s < 2) return std::nullopt;
  std::vector<int> scratch(s);
  const auto discordant = static_cast<double>(CountInversions(ranks, scratch, 0, s));
  const double pairs = static_cast<double>(s) * static_cast<double>(s - 1) / 2.0;
  return (pairs - 2.0 * discordant) / pairs;
}

AlignmentScore Score(std::span<const std::string> reference,
                     std::span<const std::string> hypothesis, std::span<const int> k_values) {
  AlignmentScore score;
  score.k_values.assign(k_values.begin(), k_values.end());
  for (int k : k_values) {
    score.overlap[k] = OverlapAtK(reference, hypothesis, k);
    score.tau[k] = k >= 2 ? KendallTauTopK(reference, hypothesis, k) : std::nullopt;
  }
  return score;
}

Summary Summarize(std::span<const std::optional<double>> values) {
  if (values.empty()) throw InvalidArgument("cannot summarize an empty list");
  Summary s;
  double sum = 0, nonperfect_sum = 0;
  for (const auto& v : values) {
    if (!v) {
      ++s.n_undefined;
      continue;
    }
    ++s.n_defined;
    sum += *v;
    s.min = s.min ? std::min(*s.min, *v) : *v;
    s.max = s.max ? std::max(*s.max, *v) : *v;
    if (*v < 1.0) {
      ++s.n_nonperfect;
      nonperfect_sum += *v;
    }
  }
  if (s.n_defined > 0) s.mean = sum / static_cast<double>(s.n_defined);
  if (s.n_nonperfect > 0) s.mean_of_nonperfect = nonperfect_sum / static_cast<double>(s.n_nonperfect);
  return s;
}

std::vector<std::optional<double>> OverlapsAt(std::span<const AlignmentScore> scores, int k) {
  std::vector<std::optional<double>> out;
  for (const auto& s : scores) {
    const auto it = s.overlap.find(k);
    out.push_back(it == s.overlap.end() ? std::nullopt : std::optional<double>(it->second));
  }
  return out;
}

std::vector<std::optional<double>> TausAt(std::span<const AlignmentScore> scores, int k) {
  std::vector<std::optional<double>> out;
  for (const auto& s : scores) {
    const auto it = s.tau.find(k);
    out.push_back(it == s.tau.end() ? std::nullopt : it->second);
  }
  return out;
}

}  // namespace rankfaith::alignment
