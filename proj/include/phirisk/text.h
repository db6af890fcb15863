// Copyright 2026 The phirisk Authors.
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
#ifndef PHIRISK_TEXT_H_
#define PHIRISK_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace phirisk {

// Offsets throughout the toolkit count Unicode code points, which is how the
// gold-standard annotations address the note text. Strings are stored as
// UTF-8; CharIndex converts between the two coordinate systems.
class CharIndex {
 public:
  // Requires valid UTF-8 (see is_valid_utf8).
  explicit CharIndex(std::string_view utf8);

  // Number of code points.
  std::size_t size() const { return starts_.size() - 1; }

  // Byte offset of the code point at char_offset; size() maps to the byte length.
  std::size_t byte_offset(std::size_t char_offset) const {
    return starts_[char_offset];
  }

  // Code point containing byte_offset.
  std::size_t char_offset(std::size_t byte_offset) const;

  std::string_view slice(std::string_view utf8, std::size_t start,
                         std::size_t end) const {
    return utf8.substr(starts_[start], starts_[end] - starts_[start]);
  }

 private:
  std::vector<std::size_t> starts_;
};

bool is_valid_utf8(std::string_view bytes);

// Rewrites CRLF and lone CR as LF.
std::string normalize_newlines(std::string_view text);

inline bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

inline bool is_ascii_upper(char c) { return c >= 'A' && c <= 'Z'; }
inline bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_ascii_alnum(char c) {
  return is_ascii_digit(c) || is_ascii_upper(c) || (c >= 'a' && c <= 'z');
}
inline char ascii_lower(char c) {
  return is_ascii_upper(c) ? static_cast<char>(c - 'A' + 'a') : c;
}

// Hex rendering of a 64-bit value, zero padded to 16 digits.
std::string hex64(unsigned long long value);

// FNV-1a over a byte sequence, chained through seed.
unsigned long long fnv1a64(std::string_view bytes,
                           unsigned long long seed = 0xcbf29ce484222325ULL);

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

}  // namespace phirisk

#endif  // PHIRISK_TEXT_H_
