// Copyright 2026 The Concierge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CONCIERGE_TEXTPROC_HPP_
#define CONCIERGE_TEXTPROC_HPP_

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace concierge::textproc {

// Normalized word units: lowercase, never empty.
using TokenSequence = std::vector<std::string>;

// Lowercases, splits on Unicode whitespace and strips leading/trailing
// punctuation. Internal apostrophes and hyphens survive ("can't").
TokenSequence tokenize(std::string_view text);

// tokenize() followed by a single-space join.
std::string normalize(std::string_view text);

std::string join(const TokenSequence& tokens, std::string_view sep = " ");

enum class EditOp { kCorrect, kSubstitute, kDelete, kInsert };

std::string_view to_string(EditOp op);

inline constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

struct AlignedPair {
  EditOp op = EditOp::kCorrect;
  std::size_t ref = kNoIndex;  // kNoIndex for insertions
  std::size_t hyp = kNoIndex;  // kNoIndex for deletions
};

struct Alignment {
  std::vector<AlignedPair> ops;
  std::size_t correct = 0;
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;

  std::size_t edit_cost() const {
    return substitutions + deletions + insertions;
  }
};

// Minimal unit-cost word alignment. When several alignments share the minimal
// cost, the backtrace prefers Correct, then Substitute, Delete, Insert.
Alignment align(const TokenSequence& reference,
                const TokenSequence& hypothesis);

// Cost only, in O(min(n, m)) memory.
std::size_t edit_distance(const TokenSequence& reference,
                          const TokenSequence& hypothesis);

}  // namespace concierge::textproc

#endif  // CONCIERGE_TEXTPROC_HPP_
