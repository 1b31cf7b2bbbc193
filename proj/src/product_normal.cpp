#include "vgprod/product_normal.hpp"

#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "quadrature.hpp"
#include "vgprod/errors.hpp"
#include "vgprod/special_functions.hpp"

namespace vgprod {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_count(std::size_t n, const char* what) {
  if (n == 0) {
    throw SizeError(std::string(what) + ": n must be at least 1");
  }
}

}  // namespace

BivariateNormalZeroMean::BivariateNormalZeroMean(double sigma_x, double sigma_y, double rho)
    : sigma_x_(sigma_x), sigma_y_(sigma_y), rho_(rho) {
  if (!std::isfinite(sigma_x) || !(sigma_x > 0.0) || !std::isfinite(sigma_y) ||
      !(sigma_y > 0.0)) {
    throw ParameterError("bivariate normal: standard deviations must be finite and positive");
  }
  if (!(std::fabs(rho) < 1.0)) {
    throw ParameterError("bivariate normal: correlation must satisfy |rho| < 1 (rho=" +
                         std::to_string(rho) + ")");
  }
}

VarianceGamma product_distribution(const BivariateNormalZeroMean& bv) {
  const double s = bv.sigma_x() * bv.sigma_y();
  return make_vg(1.0, bv.rho() * s, s * std::sqrt(1.0 - bv.rho() * bv.rho()), 0.0);
}

VarianceGamma mean_distribution(const MeanLawRequest& req) {
  check_count(req.n, "mean_distribution");
  if (req.n == 1) {
    return product_distribution(req.base);
  }
  const double n = static_cast<double>(req.n);
  const double s = req.base.sigma_x() * req.base.sigma_y();
  const double rho = req.base.rho();
  return make_vg(n, rho * s / n, s * std::sqrt(1.0 - rho * rho) / n, 0.0);
}

double pdf_product(const BivariateNormalZeroMean& bv, double x) {
  if (!std::isfinite(x)) {
    throw DomainError("pdf_product: evaluation point must be finite");
  }
  const double s = bv.sigma_x() * bv.sigma_y();
  const double rho = bv.rho();
  const double q = 1.0 - rho * rho;
  const double z = std::fabs(x) / (s * q);
  if (z < DBL_MIN) {
    return kInf;
  }
  // exp(rho x/(s q)) K_0(z) = exp((rho x - |x|)/(s q)) * e^z K_0(z)
  const double exponent = (rho * x - std::fabs(x)) / (s * q);
  return std::exp(exponent) * bessel_k_scaled(0.0, z) /
         (std::numbers::pi * s * std::sqrt(q));
}

double pdf_mean(const MeanLawRequest& req, double x) {
  if (req.n < 2) {
    throw SizeError("pdf_mean: closed form requires n >= 2; use pdf_product for n = 1");
  }
  if (!std::isfinite(x)) {
    throw DomainError("pdf_mean: evaluation point must be finite");
  }
  const double n = static_cast<double>(req.n);
  const double s = req.base.sigma_x() * req.base.sigma_y();
  const double rho = req.base.rho();
  const double q = 1.0 - rho * rho;
  const double nu = 0.5 * (n - 1.0);
  const double z = n * std::fabs(x) / (s * q);

  if (z < DBL_MIN) {
    // |x|^nu K_nu(n|x|/(s q)) -> Gamma(nu)/2 (2 s q / n)^nu, which reduces the
    // density to n Gamma(nu) q^(nu - 1/2) / (2 s sqrt(pi) Gamma(n/2)).
    // Gamma(nu) / (sqrt(pi) Gamma(n/2)) in log space: log_gamma(1/2) equals
    // log(sqrt(pi)) to the last bit, so the n = 2 peak comes out exactly 1/s.
    const double ratio = std::exp(log_gamma(nu) - 0.5 * std::log(std::numbers::pi) -
                                  log_gamma(0.5 * n));
    return 0.5 * n * ratio * std::pow(q, nu - 0.5) / s;
  }
  const double log_f = 0.5 * (n + 1.0) * std::log(n) + 0.5 * (1.0 - n) * std::numbers::ln2 -
                       0.5 * (n + 1.0) * std::log(s) - 0.5 * std::log(std::numbers::pi * q) -
                       log_gamma(0.5 * n) + nu * std::log(std::fabs(x)) +
                       rho * n * x / (s * q) + log_bessel_k(nu, z);
  return std::exp(log_f);
}

SampleBatch sample_product(const BivariateNormalZeroMean& bv, RngStream& rng, std::size_t n) {
  check_batch_size(n, "sample_product");
  const double rho = bv.rho();
  const double orth = std::sqrt(1.0 - rho * rho);
  std::vector<double> values;
  values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.normal();
    const double w = rng.normal();
    const double y = bv.sigma_y() * (rho * x + orth * w);
    values.push_back(bv.sigma_x() * x * y);
  }
  return make_sample_batch(std::move(values), rng.seed(), rng.stream_id(), "product_normal");
}

SampleBatch sample_mean(const MeanLawRequest& req, RngStream& rng, std::size_t blocks) {
  check_count(req.n, "sample_mean");
  check_batch_size(blocks, "sample_mean");
  if (req.n > std::numeric_limits<std::size_t>::max() / blocks) {
    throw SizeError("sample_mean: blocks * n overflows");
  }
  const double rho = req.base.rho();
  const double orth = std::sqrt(1.0 - rho * rho);
  const double inv_n = 1.0 / static_cast<double>(req.n);
  std::vector<double> values;
  values.reserve(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < req.n; ++i) {
      const double x = rng.normal();
      const double w = rng.normal();
      sum += req.base.sigma_x() * x * (req.base.sigma_y() * (rho * x + orth * w));
    }
    values.push_back(sum * inv_n);
  }
  return make_sample_batch(std::move(values), rng.seed(), rng.stream_id(), "product_normal_mean");
}

double oracle_pdf_product(const BivariateNormalZeroMean& bv, double x) {
  if (!std::isfinite(x) || x == 0.0) {
    throw DomainError("oracle_pdf_product: requires finite x != 0");
  }
  const double sx = bv.sigma_x();
  const double sy = bv.sigma_y();
  const double rho = bv.rho();
  const double q = 1.0 - rho * rho;
  const double norm = 1.0 / (2.0 * std::numbers::pi * sx * sy * std::sqrt(q));

  // Joint normal density exponent at (a, b).
  const auto joint_exponent = [&](double a, double b) {
    const double ua = a / sx;
    const double ub = b / sy;
    return -(ua * ua - 2.0 * rho * ua * ub + ub * ub) / (2.0 * q);
  };
  // t = sign * e^u, dt / |t| = du.
  const auto branch = [&](double sign) {
    return [&, sign](double u) {
      const double t = sign * std::exp(u);
      return norm * std::exp(joint_exponent(t, x / t));
    };
  };

  double total = 0.0;
  for (const double sign : {1.0, -1.0}) {
    const auto g = branch(sign);
    // The exponent is smallest where t^2 / sx^2 = (x/t)^2 / sy^2.
    const double peak = 0.5 * std::log(std::fabs(x) * sx / sy);
    const double peak_exp = joint_exponent(sign * std::exp(peak), x / (sign * std::exp(peak)));
    const auto negligible = [&](double u) {
      const double t = sign * std::exp(u);
      return joint_exponent(t, x / t) < peak_exp - 60.0;
    };
    double lo = peak - 0.5;
    double hi = peak + 0.5;
    for (double step = 0.5; !negligible(lo); step *= 2.0) lo -= step;
    for (double step = 0.5; !negligible(hi); step *= 2.0) hi += step;
    total += detail::integrate_smooth(g, lo, hi, 1e-12, 12).value;
  }
  return total;
}

}  // namespace vgprod
