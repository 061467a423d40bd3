#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace railtac {

/// Writes via a sibling temp file and renames into place, so readers never
/// observe a half-written file.
void atomic_write(const std::filesystem::path& file, const std::string& content);

std::string read_file(const std::filesystem::path& file);

/// Shortest decimal form that round-trips a double; keeps CSV output stable
/// across runs.
std::string format_double(double v);

/// Minimal CSV assembly: header row plus value rows, comma separated.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void add_row(const std::vector<std::string>& cells);
  const std::string& str() const { return body_; }
  std::size_t rows() const { return rows_; }

 private:
  std::string body_;
  std::size_t columns_ = 0;
  std::size_t rows_ = 0;
};

}  // namespace railtac
