// Copyright 2026 The extrav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace extrav::text {

/// Number of Unicode code points in a UTF-8 string. Stray continuation bytes
/// are not counted.
std::size_t utf8_length(std::string_view s);

/// Lowercases ASCII Latin letters only; multi-byte sequences pass through.
std::string ascii_lower(std::string_view s);

/// Non-overlapping occurrence count of `needle` in `haystack`. Empty needle -> 0.
std::size_t count_occurrences(std::string_view haystack, std::string_view needle);

bool contains(std::string_view haystack, std::string_view needle);

std::string_view trim(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

/// Reads a "one entry per line" asset: trims lines, skips blanks and '#' comments.
std::vector<std::string> read_line_list(const std::string& path);

std::string read_file(const std::string& path);
/// Writes bytes verbatim, creating parent directories.
void write_file(const std::string& path, std::string_view content);

/// 64-bit FNV-1a. Used for registry and input fingerprints.
class Fnv1a {
 public:
  void update(std::string_view bytes);
  std::uint64_t digest() const noexcept { return state_; }
  std::string hex() const;

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string to_hex(std::uint64_t v);

}  // namespace extrav::text
