#include "csv.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "frameforge/errors.hpp"

namespace frameforge::detail {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_csv_numbers(const std::string& line, std::size_t expected,
                                      std::size_t row) {
  std::vector<double> vals;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell = trim(cell);
    double v = 0.0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || res.ec != std::errc() || res.ptr != cell.data() + cell.size() ||
        !std::isfinite(v))
      throw ValidationError("row " + std::to_string(row) + ": bad numeric field '" + cell + "'");
    vals.push_back(v);
  }
  if (vals.size() != expected)
    throw ValidationError("row " + std::to_string(row) + ": expected " + std::to_string(expected) +
                          " fields, got " + std::to_string(vals.size()));
  return vals;
}

}  // namespace frameforge::detail
