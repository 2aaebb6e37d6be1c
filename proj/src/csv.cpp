#include "gpdiag/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace gpdiag {

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::span<const std::string> header)
    : out_(path, std::ios::binary | std::ios::trunc), columns_(header.size()) {
  if (!out_) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void CsvWriter::row(std::span<const CsvField> fields) {
  if (fields.size() != columns_) throw std::logic_error("csv row width does not match header");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    if (fields[i])
      out_ << format_number(*fields[i]);
    else
      ++empty_;
  }
  out_ << '\n';
  if (!out_) throw std::runtime_error("csv write failed");
  ++rows_;
}

}  // namespace gpdiag
