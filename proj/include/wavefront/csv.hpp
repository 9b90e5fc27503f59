#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace wavefront {

// Shortest decimal representation that round-trips (std::to_chars).
std::string format_double(double v);

// Comma-separated rows, LF endings, no locale formatting.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path);
    void row(const std::vector<std::string>& cells);
    void numeric_row(const std::vector<double>& cells);

  private:
    std::ofstream out_;
};

}  // namespace wavefront
