#ifndef HARNESS_CSV_HPP
#define HARNESS_CSV_HPP

#include <string>
#include <vector>

namespace harness {

// Deterministic number formatting shared by every CSV/PPM writer: shortest
// representation that round-trips a double, so identical runs give
// byte-identical artifacts.
std::string format_double(double v);

class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);
    void row(const std::vector<std::string>& cells);
    const std::string& text() const { return buffer_; }
    void write_file(const std::string& path) const;

  private:
    std::string buffer_;
    size_t columns_;
};

std::vector<std::vector<std::string>> parse_csv(const std::string& text);

}  // namespace harness

#endif  // HARNESS_CSV_HPP
