#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace vgprod {

/// A function sampled on a strictly increasing grid.
struct TabulatedFunction {
  std::vector<double> xs;
  std::vector<double> values;
  std::string meta;  // distribution and parameters
};

/// steps >= 2 evenly spaced points from `from` to `to` (both included) with
/// the endpoints and symmetric midpoints hit exactly. Throws
/// ParameterError unless from < to and the grid is strictly increasing.
std::vector<double> linear_grid(double from, double to, std::size_t steps);

TabulatedFunction tabulate(const std::function<double(double)>& fn, double from, double to,
                           std::size_t steps, std::string meta);

/// CSV with header "x,value" and 17-significant-digit values.
void write_csv(std::ostream& os, const TabulatedFunction& table);

}  // namespace vgprod
