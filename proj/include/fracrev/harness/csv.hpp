#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fracrev::harness {

/// 12 significant digits, "nan" for NaN. Locale-independent.
inline std::string format_float(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Header row plus rows, comma separated, LF line endings.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header)
      : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_fields(std::vector<std::string>(header.begin(), header.end()));
  }

  void row(const std::vector<std::string>& fields) { write_fields(fields); }

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  void write_fields(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ',';
      out_ << fields[i];
    }
    out_ << '\n';
    if (!out_) throw std::runtime_error("write failed: " + path_.string());
  }

  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace fracrev::harness
