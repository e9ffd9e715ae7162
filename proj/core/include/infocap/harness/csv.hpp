#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace infocap::harness {

/// %.17g; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double v);

/// Comma-separated rows with a header and LF line endings. Fields must not
/// contain commas or newlines.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& fields);
  void close();

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::filesystem::path path_;
};

/// Reads a whole file; used for reproducibility comparisons.
std::string read_file(const std::filesystem::path& path);

}  // namespace infocap::harness
