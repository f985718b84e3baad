#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace cohlab::cli {

/// %.17g: round-trips every double, independent of locale.
std::string format_number(double value);

/// Comma-separated table with a '#' comment header. Lines end in '\n'.
class CsvWriter {
public:
  /// Creates parent directories; Error when the file cannot be opened.
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header,
            const std::vector<std::string>& columns);

  void row(std::span<const double> values);
  void comment(const std::string& text);

  /// Flushes; Error on a failed write.
  void close();

  const std::filesystem::path& path() const noexcept { return path_; }

private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t width_;
};

}  // namespace cohlab::cli
