#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fdshock {

// %.17g decimal so doubles round-trip exactly; NaN prints as "nan".
std::string format_g17(double v);

// Buffers all rows in memory and writes the file once in the destructor, so
// a run that dies mid-stream never leaves a truncated CSV behind.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<double>& values);

 private:
  std::string path_;
  std::string buf_;
  size_t ncols_;
};

void write_key_value_file(
    const std::string& path,
    const std::vector<std::pair<std::string, std::string>>& entries);

// Flat JSON object in the given key order; values are preformatted tokens
// (format_g17 output, integers, or already-quoted strings).
void write_json_file(
    const std::string& path,
    const std::vector<std::pair<std::string, std::string>>& entries);

std::string read_file_bytes(const std::string& path);

}  // namespace fdshock
