#include "infocap/harness/csv.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "infocap/errors.hpp"

namespace infocap::harness {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary | std::ios::trunc), columns_(header.size()), path_(path) {
  if (!out_) throw ConfigError("cannot write '" + path.string() + "'");
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) {
    throw StateError("csv '" + path_.string() + "': row has " + std::to_string(fields.size()) +
                     " fields, header has " + std::to_string(columns_));
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].find_first_of(",\n\r") != std::string::npos) {
      throw StateError("csv field contains a separator: '" + fields[i] + "'");
    }
    if (i) out_.put(',');
    out_ << fields[i];
  }
  out_.put('\n');
}

void CsvWriter::close() {
  out_.close();
  if (out_.fail()) throw Error("failed to finish writing '" + path_.string() + "'");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace infocap::harness
