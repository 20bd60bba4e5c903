#pragma once

// Minimal RFC-4180 CSV emission with lossless float round-trip: every double
// is printed with 17 significant digits, so parsing an emitted file recovers
// the exact bit pattern.

#include <ostream>
#include <string>
#include <vector>

namespace mrl {

/// 17-significant-digit decimal form of v; strtod(format_double(v)) == v.
std::string format_double(double v);

/// Quotes a field per RFC 4180 when it contains a comma, quote or newline.
std::string csv_escape(const std::string& field);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);

 private:
  std::ostream& out_;
};

}  // namespace mrl
