#include <doctest.h>

#include <cmath>
#include <sstream>

#include "recnet/csv.hpp"
#include "recnet/error.hpp"
#include "recnet/rng.hpp"

using namespace recnet;

namespace {

std::vector<csv::Record> read_all(const std::string& text) {
  std::istringstream in(text);
  csv::Reader reader(in);
  std::vector<csv::Record> out;
  while (auto r = reader.next()) out.push_back(*r);
  return out;
}

}  // namespace

TEST_CASE("reader") {
  SUBCASE("quotes, escapes, CRLF and embedded newlines") {
    const auto rows = read_all("\xEF\xBB\xBF" "a,b\r\n\"x,1\",\"say \"\"hi\"\"\"\n\"two\nlines\",z\n");
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].fields == std::vector<std::string>{"a", "b"});
    CHECK(rows[1].fields == std::vector<std::string>{"x,1", "say \"hi\""});
    CHECK(rows[2].fields == std::vector<std::string>{"two\nlines", "z"});
    CHECK(rows[2].line == 3);
  }
  SUBCASE("empty trailing field") {
    const auto rows = read_all("a,\n");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].fields == std::vector<std::string>{"a", ""});
  }
  SUBCASE("malformed quoting") {
    CHECK_THROWS_AS(read_all("\"open\n"), ParseError);
    CHECK_THROWS_AS(read_all("\"x\"y,1\n"), ParseError);
  }
  SUBCASE("escape round trip") {
    for (std::string field : {"plain", "with,comma", "quote\"inside", "new\nline", ""}) {
      const auto rows = read_all(csv::escape(field) + ",end\n");
      REQUIRE(rows.size() == 1);
      CHECK(rows[0].fields[0] == field);
    }
  }
}

TEST_CASE("strict numbers") {
  CHECK(csv::parse_double("12.5") == 12.5);
  CHECK(csv::parse_double("-0.25") == -0.25);
  CHECK(csv::parse_double("1e3") == 1000.0);
  CHECK_FALSE(csv::parse_double("").has_value());
  CHECK_FALSE(csv::parse_double(" 1").has_value());
  CHECK_FALSE(csv::parse_double("1 ").has_value());
  CHECK_FALSE(csv::parse_double("+1").has_value());
  CHECK_FALSE(csv::parse_double("inf").has_value());
  CHECK_FALSE(csv::parse_double("nan").has_value());
  CHECK_FALSE(csv::parse_double("1,5").has_value());
  CHECK(csv::parse_int("-7") == std::int64_t{-7});
  CHECK_FALSE(csv::parse_int("7.0").has_value());
  CHECK(csv::parse_uint("18446744073709551615") == 18446744073709551615ULL);
  CHECK_FALSE(csv::parse_uint("-1").has_value());
  CHECK_FALSE(csv::parse_uint("18446744073709551616").has_value());
}

TEST_CASE("number formatting") {
  CHECK(csv::format_double(0.1) == "0.1");
  CHECK(csv::format_double(41000.0) == "41000");
  CHECK(csv::format_fixed(41.0, 2) == "41.00");
  CHECK(csv::format_fixed(-9.0, 2) == "-9.00");
  CHECK(csv::format_fixed(-1e-15, 2) == "0.00");
  CHECK(csv::format_fixed(-0.004, 2) == "0.00");
  CHECK(csv::format_fixed(-0.006, 2) == "-0.01");

  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double x = std::ldexp(rng.uniform() - 0.5, static_cast<int>(rng.below(80)) - 40);
    const auto back = csv::parse_double(csv::format_double(x));
    REQUIRE(back.has_value());
    CHECK(*back == x);
  }
}
