#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qitk {

// %.12g with '.' as decimal separator regardless of the global locale.
std::string format_real(double x);
std::string format_real(const std::optional<double>& x);  // empty when unset

// Comma-separated rows, header first. Fields are written verbatim except that
// any field containing a comma, quote or newline is quoted.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);

  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace qitk
