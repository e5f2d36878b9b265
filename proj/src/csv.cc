#include "culdiv/csv.h"

#include <charconv>
#include <cmath>

#include "culdiv/error.h"

namespace culdiv {

CsvReader::CsvReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

bool CsvReader::next(std::vector<std::string>& row) {
  row.clear();
  std::string line;
  if (!std::getline(in_, line)) return false;
  ++line_;
  record_line_ = line_;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (;;) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char ch = line[i];
      if (quoted) {
        if (ch == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            field += '"';
            ++i;
          } else {
            quoted = false;
          }
        } else {
          field += ch;
        }
      } else if (ch == '"' && field.empty() && !was_quoted) {
        quoted = true;
        was_quoted = true;
      } else if (ch == ',') {
        row.push_back(std::move(field));
        field.clear();
        was_quoted = false;
      } else if (ch == '\r' && i + 1 == line.size()) {
        // tolerate CRLF
      } else {
        field += ch;
      }
    }
    if (!quoted) break;
    if (!std::getline(in_, line)) throw ParseError(source_, record_line_, "unterminated quoted field");
    ++line_;
    field += '\n';
  }
  row.push_back(std::move(field));
  return true;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << csv_escape(fields[i]);
  }
  out_ << '\n';
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

}  // namespace culdiv
