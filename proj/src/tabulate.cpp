#include "vgprod/tabulate.hpp"

#include <cmath>
#include <ostream>

#include "vgprod/errors.hpp"
#include "vgprod/format.hpp"

namespace vgprod {

std::vector<double> linear_grid(double from, double to, std::size_t steps) {
  if (!std::isfinite(from) || !std::isfinite(to) || !(from < to)) {
    throw ParameterError("grid: requires finite from < to");
  }
  if (steps < 2) {
    throw ParameterError("grid: requires at least 2 steps");
  }
  std::vector<double> xs(steps);
  const double denom = static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) {
    xs[i] = (from * static_cast<double>(steps - 1 - i) + to * static_cast<double>(i)) / denom;
    if (i > 0 && !(xs[i] > xs[i - 1])) {
      throw ParameterError("grid: too many steps for the requested range");
    }
  }
  return xs;
}

TabulatedFunction tabulate(const std::function<double(double)>& fn, double from, double to,
                           std::size_t steps, std::string meta) {
  TabulatedFunction t;
  t.xs = linear_grid(from, to, steps);
  t.values.reserve(t.xs.size());
  for (double x : t.xs) t.values.push_back(fn(x));
  t.meta = std::move(meta);
  return t;
}

void write_csv(std::ostream& os, const TabulatedFunction& table) {
  os << "x,value\n";
  for (std::size_t i = 0; i < table.xs.size(); ++i) {
    os << format_number(table.xs[i]) << ',' << format_number(table.values[i]) << '\n';
  }
}

}  // namespace vgprod
