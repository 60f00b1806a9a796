/*
 * Copyright (c) 2026, The mcs authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mcs/annotation.hpp"
#include "mcs/cluster.hpp"
#include "mcs/projection.hpp"

namespace mcs {

/// Filesystem or encoder failure.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed XYZ input; `line` is 1-based.
class XyzParseError : public InvalidInput {
 public:
  XyzParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Count line, provenance comment, then `<symbol> <x> <y> <z>` with six
/// fixed decimals. LF line endings.
std::string write_xyz(const Cluster& cluster);

/// Accepts CRLF, extra whitespace, extra columns and extended-XYZ comments.
/// key=value pairs material, k, rotation and radius in the comment restore
/// the provenance.
Cluster read_xyz(std::string_view text);

/// 8-bit RGB PNG, no ancillary chunks, zlib level 6, all-filter heuristic.
std::vector<std::uint8_t> encode_png(const Image& image);
Image decode_png(std::span<const std::uint8_t> bytes);

/// Annotation record as pretty-printed JSON with a fixed key order; every
/// real number is the value of its 3-decimal rendering.
std::string write_annotation_json(const AnnotationRecord& record);
AnnotationRecord read_annotation_json(std::string_view text);

/// Parse and re-emit JSON in the writer's layout (stable for our output).
std::string canonical_json(std::string_view text);

std::string sha256_hex(std::span<const std::uint8_t> bytes);
std::string sha256_hex(std::string_view bytes);

std::string read_text_file(const std::filesystem::path& path);
std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path);
/// Writes through a sibling temporary and renames, so readers never see a
/// partial file.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace mcs
