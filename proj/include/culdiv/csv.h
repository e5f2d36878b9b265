#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace culdiv {

// RFC 4180 reader: quoted fields may contain commas, quotes ("") and
// newlines. line() is the 1-based line on which the last record started.
class CsvReader {
 public:
  CsvReader(std::istream& in, std::string source);

  bool next(std::vector<std::string>& row);
  std::size_t line() const { return record_line_; }
  const std::string& source() const { return source_; }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t line_ = 0;
  std::size_t record_line_ = 0;
};

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

std::string csv_escape(std::string_view field);

// Shortest representation that round-trips through strtod.
std::string format_double(double value);

}  // namespace culdiv
