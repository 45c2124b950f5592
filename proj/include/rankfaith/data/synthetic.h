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

#ifndef RANKFAITH_DATA_SYNTHETIC_H_
#define RANKFAITH_DATA_SYNTHETIC_H_

#include <cstdint>
#include <string>

#include "rankfaith/data/schema.h"

namespace rankfaith::data {

// Generates a LendingClub-style loan table as CSV text. The output carries 24
// usable borrower/loan features with raw, unconsolidated categorical levels,
// plus identifier, post-origination leakage, constant and all-missing columns
// so that the cleaning rules have something to remove. Byte-deterministic for
// a given (rows, seed).
std::string GenerateSyntheticLoans(std::size_t rows, std::uint64_t seed);

// The schema matching GenerateSyntheticLoans.
FeatureSchema SyntheticLoanSchema();

inline constexpr std::size_t kSyntheticRows = 10000;
inline constexpr std::uint64_t kSyntheticSeed = 2011;

}  // namespace rankfaith::data

#endif  // RANKFAITH_DATA_SYNTHETIC_H_
