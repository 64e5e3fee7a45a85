#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace rdnet::csv {

// Splits one CSV line. Handles double-quoted fields with "" escapes; does
// not handle embedded newlines (input formats here are one record per line).
std::vector<std::string> split_line(const std::string& line, char delim = ',');

// Line-oriented CSV reader. The first row is treated as a header and is
// available via header() after construction.
class Reader {
 public:
  explicit Reader(const std::string& path, char delim = ',');

  bool is_open() const { return in_.is_open(); }
  const std::vector<std::string>& header() const { return header_; }

  // Reads the next record into fields. Returns false at end of file.
  // Blank lines are skipped.
  bool next(std::vector<std::string>& fields);

  // 1-based line number of the record most recently returned by next().
  std::size_t line_number() const { return line_number_; }

 private:
  std::ifstream in_;
  char delim_;
  std::vector<std::string> header_;
  std::size_t line_number_ = 0;
  std::size_t cursor_ = 0;
};

std::string format_double(double x);

}  // namespace rdnet::csv
