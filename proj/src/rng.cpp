#include "vgprod/rng.hpp"

#include <cmath>

#include "vgprod/errors.hpp"

namespace vgprod {

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  engine_.seed(seq);
}

double RngStream::uniform() {
  // Midpoint of one of 2^53 equal cells, so never exactly 0 or 1.
  constexpr double kScale = 0x1.0p-53;
  return (static_cast<double>(engine_() >> 11) + 0.5) * kScale;
}

double RngStream::normal() {
  if (spare_normal_) {
    const double z = *spare_normal_;
    spare_normal_.reset();
    return z;
  }
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * factor;
  return u * factor;
}

double RngStream::gamma(double shape) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw ParameterError("gamma variate: shape must be finite and positive");
  }
  if (shape < 1.0) {
    const double g = gamma(shape + 1.0);
    return g * std::pow(uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double z = 0.0;
    double v = 0.0;
    do {
      z = normal();
      v = 1.0 + c * z;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double z2 = z * z;
    if (u < 1.0 - 0.0331 * z2 * z2) {
      return d * v;
    }
    if (std::log(u) < 0.5 * z2 + d * (1.0 - v + std::log(v))) {
      return d * v;
    }
  }
}

}  // namespace vgprod
