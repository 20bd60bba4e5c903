#include <doctest.h>

#include <cstdlib>
#include <random>
#include <sstream>

#include "mrl/csv.hpp"

TEST_CASE("doubles round-trip through 17 significant digits") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
  std::uniform_int_distribution<int> exponent(-30, 30);
  for (int trial = 0; trial < 1000; ++trial) {
    double v = std::ldexp(mantissa(rng), exponent(rng));
    std::string text = mrl::format_double(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
  }
  CHECK(std::strtod(mrl::format_double(0.1).c_str(), nullptr) == 0.1);
  CHECK(mrl::format_double(2.0) == "2");
}

TEST_CASE("rfc4180 quoting") {
  CHECK(mrl::csv_escape("plain") == "plain");
  CHECK(mrl::csv_escape("with,comma") == "\"with,comma\"");
  CHECK(mrl::csv_escape("said \"hi\"") == "\"said \"\"hi\"\"\"");
}

TEST_CASE("writer layout") {
  std::ostringstream out;
  mrl::CsvWriter writer(out);
  writer.header({"t", "r"});
  writer.row({1.0, 0.5});
  CHECK(out.str() == "t,r\n1,0.5\n");
}
