#include "pfml/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pfml {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& field, const std::string& context) {
  double v = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end || field.empty()) {
    throw std::runtime_error(context + ": non-numeric field '" + field + "'");
  }
  return v;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      table.header = split_fields(line);
    } else {
      table.rows.push_back(split_fields(line));
    }
  }
  if (line_no == 0) throw std::runtime_error("'" + path + "' is empty");
  return table;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  auto emit = [&out](const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      out << fields[i];
    }
    out << '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace pfml
