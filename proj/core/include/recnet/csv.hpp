#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace recnet::csv {

struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;  // physical line the record starts on (1-based)
};

// RFC-4180 reader: quoted fields, doubled-quote escapes, embedded newlines,
// LF or CRLF terminators. A UTF-8 BOM before the header is skipped.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Returns nullopt at end of input. Throws ParseError(kMalformedRow) on an
  // unterminated quote or stray characters after a closing quote.
  std::optional<Record> next();

 private:
  std::istream& in_;
  std::size_t line_ = 1;
  bool first_ = true;
};

// Reads the header row and checks it matches `expected` exactly.
void expect_header(Reader& reader, const std::vector<std::string_view>& expected,
                   std::string_view file_label);

std::string escape(std::string_view field);

// Strict numeric parsing: the whole field must be consumed, no whitespace,
// finite values only.
std::optional<double> parse_double(std::string_view text);
std::optional<std::int64_t> parse_int(std::string_view text);
std::optional<std::uint64_t> parse_uint(std::string_view text);

// Shortest representation that round-trips through parse_double.
std::string format_double(double value);
// Fixed-point with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

}  // namespace recnet::csv
