#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace targettox {

// Reads a whole file; paths ending in ".gz" are inflated transparently.
std::string read_text_file(const std::filesystem::path& path);

// Writes through a sibling temp file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// One entry per non-empty line, trailing '\r' and surrounding blanks removed.
// Lines starting with '#' are comments.
std::vector<std::string> read_word_list(const std::filesystem::path& path);

bool is_valid_utf8(std::string_view s);

std::string_view trim(std::string_view s);

std::string to_lower_ascii(std::string_view s);

// Shortest round-trip representation of a double.
std::string format_double(double v);

}  // namespace targettox
