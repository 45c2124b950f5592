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

#ifndef RANKFAITH_PROMPT_PARSER_H_
#define RANKFAITH_PROMPT_PARSER_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rankfaith::prompt {

enum class ViolationKind { kUnknownFeature, kDuplicate, kMalformedLine, kTruncated };

std::string ViolationKindName(ViolationKind kind);
ViolationKind ViolationKindFromName(std::string_view name);

struct Violation {
  ViolationKind kind = ViolationKind::kMalformedLine;
  int line = 0;  // 1-based line of the reply; 0 for truncation
  std::string text;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ParsedRanking {
  std::vector<std::string> names;
  std::vector<Violation> violations;

  friend bool operator==(const ParsedRanking&, const ParsedRanking&) = default;
};

// Reads the numbered block "<rank>. <name>" out of `reply`. Prose before the
// first and after the last numbered line is ignored; other non-blank lines in
// between are malformed. Names outside `vocabulary` and repeats are skipped
// and recorded. The accepted list is cut to k_out. Throws UnparseableReply
// when nothing is accepted.
ParsedRanking ParseRanking(std::string_view reply, std::span<const std::string> vocabulary,
                           int k_out);

}  // namespace rankfaith::prompt

#endif  // RANKFAITH_PROMPT_PARSER_H_
