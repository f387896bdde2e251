#include "qitk/csv.hpp"

#include <cmath>
#include <cstdio>

#include "qitk/errors.hpp"

namespace qitk {
namespace {

std::string quoted(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  std::string s(buf);
  // snprintf honours LC_NUMERIC; the CSV format does not.
  for (char& c : s) {
    if (c == ',') c = '.';
  }
  return s;
}

std::string format_real(const std::optional<double>& x) { return x ? format_real(*x) : std::string(); }

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) throw DimensionError("CsvWriter: row has the wrong number of fields");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << quoted(fields[i]);
  }
  out_ << '\n';
}

}  // namespace qitk
