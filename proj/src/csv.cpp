#include "rdnet/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace rdnet::csv {

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == delim) {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

Reader::Reader(const std::string& path, char delim) : in_(path), delim_(delim) {
  if (!in_.is_open()) return;
  std::string line;
  if (std::getline(in_, line)) {
    ++cursor_;
    header_ = split_line(line, delim_);
  }
}

bool Reader::next(std::vector<std::string>& fields) {
  std::string line;
  while (std::getline(in_, line)) {
    ++cursor_;
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
    fields = split_line(line, delim_);
    line_number_ = cursor_;
    return true;
  }
  return false;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace rdnet::csv
