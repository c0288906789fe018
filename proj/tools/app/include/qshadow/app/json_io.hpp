// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "qshadow/linalg.hpp"

namespace qshadow::app {

using nlohmann::json;

/// Malformed or inconsistent experiment input (exit status 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;
/// FNV-1a of the canonical (sorted-key, compact) serialisation, as 16 hex digits.
std::string content_hash(const json& value);

/// A complex number is either a bare real or a two-element [re, im] array.
Complex complex_from_json(const json& j);
json complex_to_json(Complex c);
CVector vector_from_json(const json& j);
/// Row-major nested arrays of complex entries.
CMatrix matrix_from_json(const json& j);
json matrix_to_json(const CMatrix& m);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
void write_json_file(const std::filesystem::path& path, const json& value);

/// {"config_hash", "seed", "version"} block embedded in every output file.
json provenance(const std::string& config_hash, std::uint64_t seed);

}  // namespace qshadow::app
