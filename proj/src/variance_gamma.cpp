#include "vgprod/variance_gamma.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "quadrature.hpp"
#include "vgprod/errors.hpp"
#include "vgprod/special_functions.hpp"

namespace vgprod {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kQuadTol = 1e-12;
constexpr double kSegmentTol = 1e-10;

double density_offset(const VarianceGamma& d, double offset) {
  return std::exp(log_pdf_offset(d, offset));
}

// Natural length scale used to map half-lines onto the quadrature's unit scale.
double length_scale(const VarianceGamma& d) { return std::sqrt(moments(d).variance); }

// Mass on (-inf, offset] for offset <= 0, or on [offset, inf) for offset >= 0.
double tail_mass(const VarianceGamma& d, double offset, bool left) {
  const double s = length_scale(d);
  const double dir = left ? -1.0 : 1.0;
  const auto f = [&](double t) { return density_offset(d, offset + dir * s * t); };
  return s * detail::integrate_half_line(f, kQuadTol).value;
}

// Mass between two offsets on the same side of mu, a < b.
double segment_mass(const VarianceGamma& d, double a, double b) {
  const double h = b - a;
  if (!(h > 0.0)) {
    return 0.0;
  }
  const auto f = [&](double o) { return density_offset(d, o); };
  const double near = std::fmin(std::fabs(a), std::fabs(b));
  if (near == 0.0) {
    return detail::integrate_finite(f, a, b, kQuadTol).value;
  }
  const double rate = 2.0 * d.decay_rate() + (std::fabs(d.bessel_order()) + 1.0) / near;
  if (h * rate <= 0.25) {
    // Two-point Gauss-Legendre; the guard keeps the relative error below ~1e-6
    // of an already tiny segment mass.
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * h;
    const double node = half / std::numbers::sqrt3;
    return half * (f(mid - node) + f(mid + node));
  }
  // Segment masses are at most 1, so a 1e-10 relative target bounds the
  // absolute CDF error; a tighter target only buys recursion at roundoff level.
  // Pieces are cut at doubling distances from mu so that none is longer than
  // its distance to the singular point.
  const double sign = a < 0.0 ? -1.0 : 1.0;
  const double far = std::fmax(std::fabs(a), std::fabs(b));
  double total = 0.0;
  double lo = near;
  while (lo < far) {
    const double hi = std::fmin(2.0 * lo, far);
    total += detail::integrate_smooth(f, std::fmin(sign * lo, sign * hi),
                                      std::fmax(sign * lo, sign * hi), kSegmentTol, 10)
                 .value;
    lo = hi;
  }
  return total;
}

void check_point(double x, const char* what) {
  if (std::isnan(x)) {
    throw DomainError(std::string(what) + ": evaluation point is NaN");
  }
}

}  // namespace

VarianceGamma make_vg(double r, double theta, double sigma, double mu) {
  if (!std::isfinite(r) || !std::isfinite(theta) || !std::isfinite(sigma) ||
      !std::isfinite(mu)) {
    throw ParameterError("variance-gamma: parameters must be finite");
  }
  if (!(r > 0.0)) {
    throw ParameterError("variance-gamma: shape r must be positive (r=" + std::to_string(r) + ")");
  }
  if (!(sigma > 0.0)) {
    throw ParameterError("variance-gamma: scale sigma must be positive (sigma=" +
                         std::to_string(sigma) + ")");
  }
  VarianceGamma d;
  d.r_ = r;
  d.theta_ = theta;
  d.sigma_ = sigma;
  d.mu_ = mu;
  d.nu_ = 0.5 * (r - 1.0);
  const double sigma2 = sigma * sigma;
  const double amp = std::hypot(theta, sigma);
  d.decay_ = amp / sigma2;
  d.tilt_ = theta / sigma2;
  if (!std::isfinite(d.decay_) || !(d.decay_ > 0.0) || !std::isfinite(d.tilt_)) {
    throw ParameterError("variance-gamma: sqrt(theta^2 + sigma^2) / sigma^2 is not finite");
  }
  const double half_log_pi = 0.5 * std::log(std::numbers::pi);
  d.log_norm_ = -std::log(sigma) - half_log_pi - log_gamma(0.5 * r) - d.nu_ * std::log(2.0 * amp);
  if (r > 1.0) {
    // |y|^nu K_nu(c|y|) -> Gamma(nu)/2 (2/c)^nu as y -> 0
    d.log_at_mu_ = -std::log(sigma) - half_log_pi - log_gamma(0.5 * r) + log_gamma(d.nu_) -
                   std::numbers::ln2 + d.nu_ * (2.0 * std::log(sigma) - 2.0 * std::log(amp));
    // The same limit with the gamma ratio and sqrt(pi) folded together and the
    // power taken in linear arithmetic, so that exact cases (the Laplace peak
    // 1/(2A), for one) come out exact.
    if (r < 300.0) {
      const double ratio = std::exp(log_gamma(d.nu_) - half_log_pi - log_gamma(0.5 * r));
      const double linear = ratio * std::pow(sigma / amp, r - 1.0) / (2.0 * sigma);
      if (std::isnormal(linear)) d.log_at_mu_ = std::log(linear);
    }
  } else {
    d.log_at_mu_ = kInf;
  }
  return d;
}

double log_pdf_offset(const VarianceGamma& d, double offset) {
  const double dist = std::fabs(offset);
  const double z = d.decay_ * dist;
  if (z < DBL_MIN) {
    return d.log_at_mu_;
  }
  if (std::isinf(z)) {
    // Tail limit: the density decays at least like e^{-(c - |tilt|)|y|}.
    return -kInf;
  }
  double value = d.log_norm_ + d.tilt_ * offset + log_bessel_k(d.nu_, z);
  if (d.nu_ != 0.0) {
    value += d.nu_ * std::log(dist);
  }
  return value;
}

double log_pdf(const VarianceGamma& d, double x) {
  if (!std::isfinite(x)) {
    throw DomainError("log_pdf: evaluation point must be finite");
  }
  return log_pdf_offset(d, x - d.mu());
}

double pdf(const VarianceGamma& d, double x) {
  if (!std::isfinite(x)) {
    throw DomainError("pdf: evaluation point must be finite");
  }
  return std::exp(log_pdf_offset(d, x - d.mu()));
}

double cdf(const VarianceGamma& d, double x) {
  check_point(x, "cdf");
  if (x == -kInf) {
    return 0.0;
  }
  if (x == kInf) {
    return 1.0;
  }
  const double left = tail_mass(d, 0.0, true);
  const double right = tail_mass(d, 0.0, false);
  const double total = left + right;
  const double offset = x - d.mu();
  double value = 0.0;
  if (offset <= 0.0) {
    value = tail_mass(d, offset, true) / total;
  } else {
    value = 1.0 - tail_mass(d, offset, false) / total;
  }
  return std::clamp(value, 0.0, 1.0);
}

std::vector<double> cdf_sorted(const VarianceGamma& d, std::span<const double> sorted_xs) {
  for (std::size_t i = 0; i < sorted_xs.size(); ++i) {
    check_point(sorted_xs[i], "cdf_sorted");
    if (i > 0 && sorted_xs[i] < sorted_xs[i - 1]) {
      throw DomainError("cdf_sorted: points must be in ascending order");
    }
  }
  std::vector<double> out(sorted_xs.size());
  if (sorted_xs.empty()) {
    return out;
  }
  const double left = tail_mass(d, 0.0, true);
  const double right = tail_mass(d, 0.0, false);
  const double total = left + right;
  const double mu = d.mu();

  const auto split = static_cast<std::size_t>(
      std::upper_bound(sorted_xs.begin(), sorted_xs.end(), mu) - sorted_xs.begin());

  // Walk outward from mu on each side, accumulating mass between neighbours.
  double acc = 0.0;
  double prev = 0.0;
  for (std::size_t i = split; i-- > 0;) {
    if (sorted_xs[i] == -kInf) {
      out[i] = 0.0;
      continue;
    }
    const double offset = sorted_xs[i] - mu;
    acc += segment_mass(d, offset, prev);
    prev = offset;
    out[i] = std::clamp((left - acc) / total, 0.0, 1.0);
  }
  acc = 0.0;
  prev = 0.0;
  for (std::size_t i = split; i < sorted_xs.size(); ++i) {
    if (sorted_xs[i] == kInf) {
      out[i] = 1.0;
      continue;
    }
    const double offset = sorted_xs[i] - mu;
    acc += segment_mass(d, prev, offset);
    prev = offset;
    out[i] = std::clamp((left + acc) / total, 0.0, 1.0);
  }
  return out;
}

Moments moments(const VarianceGamma& d) {
  return Moments{d.mu() + d.r() * d.theta(),
                 d.r() * (2.0 * d.theta() * d.theta() + d.sigma() * d.sigma())};
}

SampleBatch sample(const VarianceGamma& d, RngStream& rng, std::size_t n) {
  check_batch_size(n, "variance-gamma sample");
  std::vector<double> values;
  values.reserve(n);
  const double shape = 0.5 * d.r();
  for (std::size_t i = 0; i < n; ++i) {
    const double s = 2.0 * rng.gamma(shape);
    const double t = rng.normal();
    values.push_back(d.mu() + d.theta() * s + d.sigma() * std::sqrt(s) * t);
  }
  return make_sample_batch(std::move(values), rng.seed(), rng.stream_id(), "variance_gamma");
}

VarianceGamma convolve(const VarianceGamma& a, const VarianceGamma& b) {
  if (a.mu() != 0.0 || b.mu() != 0.0) {
    throw MismatchError("convolve: both laws must have location mu = 0");
  }
  if (a.theta() != b.theta() || a.sigma() != b.sigma()) {
    throw MismatchError("convolve: theta and sigma must be identical");
  }
  return make_vg(a.r() + b.r(), a.theta(), a.sigma(), 0.0);
}

VarianceGamma scale(const VarianceGamma& d, double a) {
  if (!std::isfinite(a) || a == 0.0) {
    throw ParameterError("scale: factor must be finite and non-zero");
  }
  if (d.mu() != 0.0) {
    throw MismatchError("scale: only defined for location mu = 0");
  }
  return make_vg(d.r(), a * d.theta(), std::fabs(a) * d.sigma(), 0.0);
}

}  // namespace vgprod
