#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace targettox {

// RFC 4180 reader over an in-memory buffer. Quoted fields may span lines.
class CsvReader {
 public:
  explicit CsvReader(std::string_view text) : text_(text) {}

  // Reads the next record. Returns false at end of input. Sets `ok` to false
  // when the record has an unterminated quote or stray characters after a
  // closing quote; the reader then resynchronises at the next line.
  bool next(std::vector<std::string>& fields, bool& ok);

  // 1-based line on which the last returned record started.
  std::size_t record_line() const { return record_line_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
};

std::string csv_escape(std::string_view field);

// Escapes and joins fields into one CSV line ending in a newline.
std::string csv_line(const std::vector<std::string>& fields);

}  // namespace targettox
