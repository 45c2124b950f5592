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

#ifndef RANKFAITH_UTIL_FORMAT_H_
#define RANKFAITH_UTIL_FORMAT_H_

#include <string>
#include <string_view>
#include <vector>

namespace rankfaith::util {

// printf-style "%.<decimals>f".
std::string Fixed(double value, int decimals);

// Fixed decimals with comma thousands separators, e.g. 12345.6 -> "12,345.60".
std::string WithThousands(double value, int decimals);

std::string Trim(std::string_view s);
std::vector<std::string> Split(std::string_view s, char sep);
bool ParseDouble(std::string_view s, double* out);

}  // namespace rankfaith::util

#endif  // RANKFAITH_UTIL_FORMAT_H_
