#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lightsage {

// Small TSV / file helpers shared by every module that touches disk.

std::vector<std::string> split_tabs(const std::string& line);

std::optional<int64_t> parse_i64(const std::string& s);
std::optional<double> parse_f64(const std::string& s);

// Reads a whole file; throws std::runtime_error on failure.
std::string read_file(const std::string& path);
bool file_exists(const std::string& path);

// Writes content to a temp file in the same directory, then renames it over
// path. A failed run never leaves a partial output behind.
void atomic_write_file(const std::string& path, const std::string& content);

// Doubles are serialized so that deserialization is exact: integral values
// print without a decimal point, everything else with 17 significant digits.
std::string format_double(double v);
// Floats (embedding payloads) round-trip at 9 significant digits.
std::string format_float(float v);

// FNV-1a 64-bit, hex encoded. Used for run-manifest content hashes.
std::string fnv1a_hex(const std::string& bytes);
std::string file_hash_hex(const std::string& path);

std::string base64_encode(const unsigned char* data, size_t len);
std::vector<unsigned char> base64_decode(const std::string& text);

}  // namespace lightsage
