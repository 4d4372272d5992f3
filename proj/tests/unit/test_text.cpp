#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <sstream>

#include "error.hpp"
#include "text.hpp"
#include "window.hpp"

using namespace fss;

TEST_CASE("csv quoting, CRLF, BOM and blank lines") {
  const std::string text =
      "\xEF\xBB\xBF" "a,b,c\r\n"
      "1,\"x, y\",\"say \"\"hi\"\"\"\r\n"
      "\r\n"
      "2,\"multi\nline\",\r\n"
      "3,,z\n";
  const CsvTable t = parse_csv(text, "t.csv");
  REQUIRE(t.header == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0] == std::vector<std::string>{"1", "x, y", "say \"hi\""});
  CHECK(t.rows[1] == std::vector<std::string>{"2", "multi\nline", ""});
  CHECK(t.rows[2] == std::vector<std::string>{"3", "", "z"});
  CHECK(t.lines == std::vector<std::size_t>{2, 4, 6});
}

TEST_CASE("malformed csv is a data error") {
  CHECK_THROWS_AS(parse_csv("a,b\n\"open,1\n", "t.csv"), DataError);
  CHECK_THROWS_AS(parse_csv("a,b\nx\"y,1\n", "t.csv"), DataError);
}

TEST_CASE("csv writing escapes only when needed") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("q\"") == "\"q\"\"\"");
  std::ostringstream out;
  const std::vector<std::string> row{"x", "y,z", ""};
  write_csv_row(out, row);
  CHECK(out.str() == "x,\"y,z\",\n");
  const CsvTable back = parse_csv("h1,h2,h3\n" + out.str(), "t");
  CHECK(back.rows.front() == row);
}

TEST_CASE("format_double round trips") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(0.1 + 0.2) == "0.30000000000000004");
  for (double v : {1.0 / 3.0, 87.5, 1e-300, 123456789.125}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("windows") {
  CHECK(parse_window("2003-2008") == Window{2003, 2008});
  CHECK(parse_window("2008") == Window{2008, 2008});
  CHECK(Window{2003, 2008}.label() == "2003-2008");
  CHECK(Window{2008, 2008}.label() == "2008");
  CHECK(Window{2003, 2008}.length() == 6);
  CHECK(Window{2003, 2008}.contains(Window{2004, 2005}));
  CHECK_FALSE(Window{2004, 2008}.contains(2003));
  CHECK_THROWS_AS(make_window(2009, 2008), UsageError);
  CHECK_THROWS_AS(parse_window("2009-2008"), UsageError);
  CHECK_THROWS_AS(parse_window("abc"), UsageError);
}

TEST_CASE("split and trim") {
  CHECK(split("a;b;;c", ';') == std::vector<std::string>{"a", "b", "", "c"});
  CHECK(trim("  x y \t") == "x y");
}
