#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

// Byte-deterministic CSV emission: '#' key=value metadata lines, then a
// header row, then data rows with every number rendered at 12
// significant digits, LF line endings.

namespace fadesplit {

std::string format_number(double x);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void metadata(const std::string& key, const std::string& value);
  void metadata(const std::string& key, double value);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);

 private:
  std::ostream& out_;
};

}  // namespace fadesplit
