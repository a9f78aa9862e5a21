#ifndef PFML_CSV_HPP_
#define PFML_CSV_HPP_

#include <string>
#include <vector>

namespace pfml {

// Shortest representation that parses back to the identical double.
std::string format_double(double v);

// Strict parse of a full field. Throws std::runtime_error mentioning
// `context` (typically "file:line") on failure.
double parse_double(const std::string& field, const std::string& context);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // ragged rows are kept; callers validate
};

// Plain comma-separated values, no quoting, LF line endings.
CsvTable read_csv(const std::string& path);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace pfml

#endif
