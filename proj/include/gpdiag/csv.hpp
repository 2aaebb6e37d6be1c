#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gpdiag {

using CsvField = std::optional<double>;

/// 12 significant digits, "%.12g" style; negative zero is written as 0.
std::string format_number(double x);

/// Comma-separated, LF line endings, header first. Empty optional -> empty field.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::span<const std::string> header);

  void row(std::span<const CsvField> fields);
  std::size_t rows() const noexcept { return rows_; }
  /// Number of empty fields written so far.
  std::size_t empty_fields() const noexcept { return empty_; }

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::size_t rows_ = 0;
  std::size_t empty_ = 0;
};

}  // namespace gpdiag
