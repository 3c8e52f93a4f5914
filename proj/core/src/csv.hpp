#pragma once

#include <string>
#include <vector>

namespace frameforge::detail {

std::string trim(const std::string& s);

// Splits a comma-separated row into exactly `expected` finite doubles.
// `row` is the 1-based line number used in diagnostics.
std::vector<double> parse_csv_numbers(const std::string& line, std::size_t expected,
                                      std::size_t row);

}  // namespace frameforge::detail
