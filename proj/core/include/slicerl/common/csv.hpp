#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace slicerl {

// Shortest decimal form that round-trips a double.
std::string fmt_double(double x);

class CsvWriter {
 public:
  CsvWriter() = default;
  explicit CsvWriter(const std::string& path);
  void open(const std::string& path);
  bool is_open() const { return out_.is_open(); }
  void header(const std::vector<std::string>& cols);
  void row(const std::vector<std::string>& cells);
  void close();

 private:
  std::ofstream out_;
  size_t ncols_ = 0;
  std::string path_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 when absent
};

// Throws std::runtime_error naming the offending row on malformed input.
CsvTable read_csv(const std::string& path);

}  // namespace slicerl
