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

#ifndef RANKFAITH_ALIGNMENT_ALIGNMENT_H_
#define RANKFAITH_ALIGNMENT_ALIGNMENT_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rankfaith::alignment {

// |top-K(ref) ∩ top-K(hyp)| / K. A hypothesis shorter than K contributes its
// whole list. Throws InvalidArgument when K < 1 or K exceeds the reference.
double OverlapAtK(std::span<const std::string> reference, std::span<const std::string> hypothesis,
                  int k);

// Kendall tau-a between the two orderings induced on
// S = top-K(ref) ∩ top-K(hyp); std::nullopt when |S| < 2. Throws
// InvalidArgument when K < 2.
std::optional<double> KendallTauTopK(std::span<const std::string> reference,
                                     std::span<const std::string> hypothesis, int k);

struct AlignmentScore {
  std::vector<int> k_values;
  std::map<int, double> overlap;
  std::map<int, std::optional<double>> tau;

  friend bool operator==(const AlignmentScore&, const AlignmentScore&) = default;
};

// Overlap and tau at every K. Tau is left undefined at K = 1.
AlignmentScore Score(std::span<const std::string> reference,
                     std::span<const std::string> hypothesis, std::span<const int> k_values);

struct Summary {
  std::size_t n_defined = 0;
  std::size_t n_undefined = 0;
  std::optional<double> mean, min, max;
  std::size_t n_nonperfect = 0;  // defined values strictly below 1
  std::optional<double> mean_of_nonperfect;
};

// Statistics over the defined values. Throws InvalidArgument on empty input.
Summary Summarize(std::span<const std::optional<double>> values);

// Convenience projections over many scores at one K.
std::vector<std::optional<double>> OverlapsAt(std::span<const AlignmentScore> scores, int k);
std::vector<std::optional<double>> TausAt(std::span<const AlignmentScore> scores, int k);

}  // namespace rankfaith::alignment

#endif  // RANKFAITH_ALIGNMENT_ALIGNMENT_H_
