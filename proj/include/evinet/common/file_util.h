/*
 * Copyright 2026 The EviNet Authors.
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

#ifndef EVINET_COMMON_FILE_UTIL_H_
#define EVINET_COMMON_FILE_UTIL_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace evinet {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over `path`. Parent
// directories are created as needed.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view data);

// 64-bit FNV-1a.
std::uint64_t Fnv1a64(std::string_view data,
                      std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string HexDigest(std::uint64_t h);
std::string HashFile(const std::filesystem::path& path);

// Shortest decimal text that round-trips the double exactly.
std::string FormatReal(double v);

// UTC timestamp, ISO-8601 to the second.
std::string UtcTimestamp();

}  // namespace evinet

#endif  // EVINET_COMMON_FILE_UTIL_H_
