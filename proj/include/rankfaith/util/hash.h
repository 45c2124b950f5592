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

#ifndef RANKFAITH_UTIL_HASH_H_
#define RANKFAITH_UTIL_HASH_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace rankfaith::util {

// Lower-case hex SHA-256 of `bytes`.
std::string Sha256Hex(std::string_view bytes);

// SHA-256 of a file's contents. Throws IoError if unreadable.
std::string Sha256File(const std::filesystem::path& path);

// 64-bit prefix of the SHA-256 digest, for seeding.
std::uint64_t Hash64(std::string_view bytes);

}  // namespace rankfaith::util

#endif  // RANKFAITH_UTIL_HASH_H_
