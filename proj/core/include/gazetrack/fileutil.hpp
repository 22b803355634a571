#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace gazetrack {

// Writes through a sibling temporary file and renames it into place, so
// readers never observe a partially written output.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

std::string read_file(const std::filesystem::path& path);

std::string sha256_hex(std::string_view bytes);

// Shortest decimal representation that round-trips; identical inputs always
// produce identical text.
std::string format_double(double value);

}  // namespace gazetrack
