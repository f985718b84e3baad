#include "cohlab/cli/csv.hpp"

#include <cstdio>

#include "cohlab/errors.hpp"

namespace cohlab::cli {

std::string format_number(double value) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", value);
  std::string out(buf, static_cast<std::size_t>(n));
  // snprintf honours LC_NUMERIC; the decimal mark must stay '.'.
  for (char& ch : out) {
    if (ch == ',') ch = '.';
  }
  return out;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::vector<std::string>& columns)
    : path_(path), width_(columns.size()) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw Error("cannot open '" + path.string() + "' for writing");
  for (const auto& line : header) out_ << "# " << line << '\n';
  for (std::size_t k = 0; k < columns.size(); ++k) out_ << (k ? "," : "") << columns[k];
  out_ << '\n';
}

void CsvWriter::row(std::span<const double> values) {
  if (values.size() != width_) throw Error("csv row width mismatch in '" + path_.string() + "'");
  for (std::size_t k = 0; k < values.size(); ++k) out_ << (k ? "," : "") << format_number(values[k]);
  out_ << '\n';
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << '\n'; }

void CsvWriter::close() {
  out_.flush();
  if (!out_) throw Error("write failed for '" + path_.string() + "'");
  out_.close();
}

}  // namespace cohlab::cli
