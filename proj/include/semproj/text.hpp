// Copyright 2026 The semproj Authors.
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

// Minimal UTF-8 helpers. Only what segmentation and the sentiment tokenizer
// need: code point iteration, whitespace classes and ASCII/Latin-1 casing.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace semproj::text {

struct CodePoint {
  char32_t value;
  std::size_t offset;
  std::size_t length;
};

/// Decodes the code point starting at `pos`. Malformed sequences decode as
/// U+FFFD with length 1 so iteration always makes progress.
inline CodePoint decode_at(std::string_view s, std::size_t pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  auto cont = [&](std::size_t i) -> int {
    if (pos + i >= s.size()) return -1;
    const auto b = static_cast<unsigned char>(s[pos + i]);
    return (b & 0xC0) == 0x80 ? (b & 0x3F) : -1;
  };
  if (b0 < 0x80) return {b0, pos, 1};
  if ((b0 & 0xE0) == 0xC0) {
    const int c1 = cont(1);
    if (c1 >= 0) return {static_cast<char32_t>(((b0 & 0x1F) << 6) | c1), pos, 2};
  } else if ((b0 & 0xF0) == 0xE0) {
    const int c1 = cont(1), c2 = cont(2);
    if (c1 >= 0 && c2 >= 0) {
      return {static_cast<char32_t>(((b0 & 0x0F) << 12) | (c1 << 6) | c2), pos, 3};
    }
  } else if ((b0 & 0xF8) == 0xF0) {
    const int c1 = cont(1), c2 = cont(2), c3 = cont(3);
    if (c1 >= 0 && c2 >= 0 && c3 >= 0) {
      return {static_cast<char32_t>(((b0 & 0x07) << 18) | (c1 << 12) | (c2 << 6) | c3), pos, 4};
    }
  }
  return {0xFFFD, pos, 1};
}

inline std::vector<CodePoint> code_points(std::string_view s) {
  std::vector<CodePoint> out;
  out.reserve(s.size());
  for (std::size_t pos = 0; pos < s.size();) {
    out.push_back(decode_at(s, pos));
    pos += out.back().length;
  }
  return out;
}

inline std::size_t code_point_count(std::string_view s) {
  std::size_t n = 0;
  for (std::size_t pos = 0; pos < s.size(); ++n) pos += decode_at(s, pos).length;
  return n;
}

inline bool is_line_break(char32_t c) {
  return c == U'\n' || c == U'\r' || c == U'\v' || c == U'\f' || c == 0x85 || c == 0x2028 ||
         c == 0x2029;
}

/// Unicode category Zs plus tab and line breaks.
inline bool is_space(char32_t c) {
  if (c == U' ' || c == U'\t' || is_line_break(c)) return true;
  if (c == 0xA0 || c == 0x1680 || c == 0x202F || c == 0x205F || c == 0x3000) return true;
  return c >= 0x2000 && c <= 0x200A;
}

inline std::string_view trim(std::string_view s) {
  auto cps = code_points(s);
  std::size_t first = 0;
  while (first < cps.size() && is_space(cps[first].value)) ++first;
  if (first == cps.size()) return {};
  std::size_t last = cps.size();
  while (last > first && is_space(cps[last - 1].value)) --last;
  const std::size_t begin = cps[first].offset;
  const std::size_t end = cps[last - 1].offset + cps[last - 1].length;
  return s.substr(begin, end - begin);
}

/// Splits on whitespace runs; never yields empty pieces.
inline std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = std::string_view::npos;
  for (std::size_t pos = 0; pos < s.size();) {
    const CodePoint cp = decode_at(s, pos);
    if (is_space(cp.value)) {
      if (start != std::string_view::npos) {
        out.push_back(s.substr(start, pos - start));
        start = std::string_view::npos;
      }
    } else if (start == std::string_view::npos) {
      start = pos;
    }
    pos += cp.length;
  }
  if (start != std::string_view::npos) out.push_back(s.substr(start));
  return out;
}

inline bool is_upper_letter(char32_t c) {
  return (c >= U'A' && c <= U'Z') || (c >= 0xC0 && c <= 0xDE && c != 0xD7);
}

inline bool is_lower_letter(char32_t c) {
  return (c >= U'a' && c <= U'z') || (c >= 0xDF && c <= 0xFF && c != 0xF7);
}

/// Lowercases ASCII and Latin-1 letters; other code points pass through.
inline std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t pos = 0; pos < s.size();) {
    const CodePoint cp = decode_at(s, pos);
    if (cp.value < 0x80) {
      char ch = s[pos];
      if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
      out.push_back(ch);
    } else if (cp.length == 2 && is_upper_letter(cp.value)) {
      const char32_t lower = cp.value + 0x20;
      out.push_back(static_cast<char>(0xC0 | (lower >> 6)));
      out.push_back(static_cast<char>(0x80 | (lower & 0x3F)));
    } else {
      out.append(s.substr(pos, cp.length));
    }
    pos += cp.length;
  }
  return out;
}

/// True when the string has at least one cased letter and every cased letter
/// is uppercase (the usual "isupper" contract).
inline bool is_all_caps(std::string_view s) {
  bool cased = false;
  for (std::size_t pos = 0; pos < s.size();) {
    const CodePoint cp = decode_at(s, pos);
    if (is_lower_letter(cp.value)) return false;
    if (is_upper_letter(cp.value)) cased = true;
    pos += cp.length;
  }
  return cased;
}

inline bool ends_with_any(std::string_view s, std::string_view chars) {
  return !s.empty() && chars.find(s.back()) != std::string_view::npos;
}

}  // namespace semproj::text
