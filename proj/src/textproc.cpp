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

#include "concierge/textproc.hpp"

#include <algorithm>
#include <cstdint>

namespace concierge::textproc {
namespace {

struct CodePoint {
  char32_t value;
  std::size_t length;  // bytes consumed
};

// Lenient UTF-8 decoding: an invalid lead byte decodes as itself, length 1.
CodePoint decode(std::string_view s, std::size_t pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  auto cont = [&](std::size_t i) -> int {
    if (pos + i >= s.size()) return -1;
    const auto b = static_cast<unsigned char>(s[pos + i]);
    return (b & 0xC0) == 0x80 ? (b & 0x3F) : -1;
  };
  if (b0 < 0x80) return {b0, 1};
  if ((b0 & 0xE0) == 0xC0) {
    const int c1 = cont(1);
    if (c1 >= 0) return {static_cast<char32_t>(((b0 & 0x1F) << 6) | c1), 2};
  } else if ((b0 & 0xF0) == 0xE0) {
    const int c1 = cont(1), c2 = cont(2);
    if (c1 >= 0 && c2 >= 0) {
      return {static_cast<char32_t>(((b0 & 0x0F) << 12) | (c1 << 6) | c2), 3};
    }
  } else if ((b0 & 0xF8) == 0xF0) {
    const int c1 = cont(1), c2 = cont(2), c3 = cont(3);
    if (c1 >= 0 && c2 >= 0 && c3 >= 0) {
      return {static_cast<char32_t>(((b0 & 0x07) << 18) | (c1 << 12) |
                                    (c2 << 6) | c3),
              4};
    }
  }
  return {b0, 1};
}

void encode(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_space(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_punct(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
  }
  switch (cp) {
    case 0xA1: case 0xAB: case 0xBB: case 0xBF: case 0xB7:
    case 0x2018: case 0x2019: case 0x201C: case 0x201D: case 0x2026:
    case 0x2013: case 0x2014: case 0x3001: case 0x3002:
      return true;
    default:
      return false;
  }
}

// ASCII and Latin-1 uppercase letters only; other scripts pass unchanged.
char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  return cp;
}

void flush_word(std::vector<char32_t>& word, TokenSequence& out) {
  std::size_t begin = 0;
  std::size_t end = word.size();
  while (begin < end && is_punct(word[begin])) ++begin;
  while (end > begin && is_punct(word[end - 1])) --end;
  if (begin < end) {
    std::string token;
    for (std::size_t i = begin; i < end; ++i) encode(word[i], token);
    out.push_back(std::move(token));
  }
  word.clear();
}

}  // namespace

TokenSequence tokenize(std::string_view text) {
  TokenSequence out;
  std::vector<char32_t> word;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const CodePoint cp = decode(text, pos);
    pos += cp.length;
    if (is_space(cp.value)) {
      flush_word(word, out);
    } else {
      word.push_back(to_lower(cp.value));
    }
  }
  flush_word(word, out);
  return out;
}

std::string normalize(std::string_view text) { return join(tokenize(text)); }

std::string join(const TokenSequence& tokens, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.append(sep);
    out.append(tokens[i]);
  }
  return out;
}

std::string_view to_string(EditOp op) {
  switch (op) {
    case EditOp::kCorrect: return "C";
    case EditOp::kSubstitute: return "S";
    case EditOp::kDelete: return "D";
    case EditOp::kInsert: return "I";
  }
  return "?";
}

Alignment align(const TokenSequence& reference,
                const TokenSequence& hypothesis) {
  const std::size_t n = reference.size();
  const std::size_t m = hypothesis.size();
  const std::size_t width = m + 1;
  std::vector<std::uint32_t> cost((n + 1) * width);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& {
    return cost[i * width + j];
  };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = static_cast<std::uint32_t>(i);
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::uint32_t diag =
          at(i - 1, j - 1) + (reference[i - 1] == hypothesis[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }

  Alignment result;
  result.ops.reserve(std::max(n, m));
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const std::uint32_t here = at(i, j);
    if (i > 0 && j > 0) {
      const bool same = reference[i - 1] == hypothesis[j - 1];
      if (same && at(i - 1, j - 1) == here) {
        result.ops.push_back({EditOp::kCorrect, i - 1, j - 1});
        ++result.correct;
        --i, --j;
        continue;
      }
      if (!same && at(i - 1, j - 1) + 1 == here) {
        result.ops.push_back({EditOp::kSubstitute, i - 1, j - 1});
        ++result.substitutions;
        --i, --j;
        continue;
      }
    }
    if (i > 0 && at(i - 1, j) + 1 == here) {
      result.ops.push_back({EditOp::kDelete, i - 1, kNoIndex});
      ++result.deletions;
      --i;
      continue;
    }
    result.ops.push_back({EditOp::kInsert, kNoIndex, j - 1});
    ++result.insertions;
    --j;
  }
  std::reverse(result.ops.begin(), result.ops.end());
  return result;
}

std::size_t edit_distance(const TokenSequence& reference,
                          const TokenSequence& hypothesis) {
  const TokenSequence& a =
      reference.size() >= hypothesis.size() ? reference : hypothesis;
  const TokenSequence& b =
      reference.size() >= hypothesis.size() ? hypothesis : reference;
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t prev_diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({prev_diag + (a[i - 1] == b[j - 1] ? 0 : 1), up + 1,
                         row[j - 1] + 1});
      prev_diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace concierge::textproc
