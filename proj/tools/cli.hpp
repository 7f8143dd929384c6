#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rfad::cli {

/// Entry point shared by the `rfad` executable and the tests. Data products
/// go to files or `out`; diagnostics go to `err`. Returns the exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// "a:b:step" ranges (inclusive) or comma-separated lists.
std::vector<int> parse_int_grid(const std::string &text);
std::vector<double> parse_double_grid(const std::string &text);

} // namespace rfad::cli
