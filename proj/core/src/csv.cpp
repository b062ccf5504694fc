#include "recnet/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "recnet/error.hpp"

namespace recnet::csv {

std::optional<Record> Reader::next() {
  if (first_) {
    first_ = false;
    // Skip a UTF-8 byte order mark.
    if (in_.peek() == 0xEF) {
      char bom[3];
      in_.read(bom, 3);
      if (!(static_cast<unsigned char>(bom[1]) == 0xBB &&
            static_cast<unsigned char>(bom[2]) == 0xBF)) {
        throw ParseError(ParseErrorKind::kMalformedRow, line_,
                         "invalid byte sequence at start of file");
      }
    }
  }
  if (in_.peek() == std::char_traits<char>::eof()) return std::nullopt;

  Record record;
  record.line = line_;
  std::string field;
  bool in_quotes = false;
  bool after_quote = false;  // just closed a quoted field
  bool field_was_quoted = false;

  auto finish_field = [&] {
    record.fields.push_back(std::move(field));
    field.clear();
    after_quote = false;
    field_was_quoted = false;
  };

  while (true) {
    const int c = in_.get();
    if (c == std::char_traits<char>::eof()) {
      if (in_quotes) {
        throw ParseError(ParseErrorKind::kMalformedRow, record.line,
                         "unterminated quoted field");
      }
      finish_field();
      return record;
    }
    const char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          in_quotes = false;
          after_quote = true;
        }
      } else {
        if (ch == '\n') ++line_;
        field.push_back(ch);
      }
      continue;
    }
    if (ch == ',') {
      finish_field();
    } else if (ch == '\r' && in_.peek() == '\n') {
      // CR of a CRLF terminator; handled with the LF.
    } else if (ch == '\n') {
      ++line_;
      finish_field();
      return record;
    } else if (ch == '"' && field.empty() && !field_was_quoted && !after_quote) {
      in_quotes = true;
      field_was_quoted = true;
    } else {
      if (after_quote || ch == '"') {
        throw ParseError(ParseErrorKind::kMalformedRow, record.line,
                         "unexpected quote character");
      }
      field.push_back(ch);
    }
  }
}

void expect_header(Reader& reader, const std::vector<std::string_view>& expected,
                   std::string_view file_label) {
  auto header = reader.next();
  std::string want;
  for (auto name : expected) {
    if (!want.empty()) want += ',';
    want += name;
  }
  if (!header) {
    throw ParseError(ParseErrorKind::kMissingHeader, 1,
                     std::string(file_label) + ": expected header '" + want + "'");
  }
  bool match = header->fields.size() == expected.size();
  for (std::size_t i = 0; match && i < expected.size(); ++i) {
    match = header->fields[i] == expected[i];
  }
  if (!match) {
    throw ParseError(ParseErrorKind::kMissingHeader, header->line,
                     std::string(file_label) + ": expected header '" + want + "'");
  }
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

std::optional<double> parse_double(std::string_view text) {
  if (text.empty() || text.front() == '+') return std::nullopt;
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::optional<std::int64_t> parse_int(std::string_view text) {
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::optional<std::uint64_t> parse_uint(std::string_view text) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::fixed, decimals);
  std::string out(buf, ptr);
  // Values that round to zero print unsigned.
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

}  // namespace recnet::csv
