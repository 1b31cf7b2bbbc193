#include "vgprod/verification.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>
#include <utility>

#include "quadrature.hpp"
#include "vgprod/errors.hpp"
#include "vgprod/format.hpp"

namespace vgprod {

GofReport make_report(std::string test_name, double statistic, double threshold,
                      std::size_t n_samples, std::uint64_t seed, std::string details) {
  if (std::isnan(statistic)) {
    statistic = DBL_MAX;
  }
  GofReport r;
  r.test_name = std::move(test_name);
  r.statistic = statistic;
  r.threshold = threshold;
  r.n_samples = n_samples;
  r.seed = seed;
  r.passed = statistic <= threshold;
  r.details = std::move(details);
  return r;
}

bool is_negative_control(const GofReport& report) {
  return report.test_name.rfind("negative/", 0) == 0;
}

nlohmann::json to_json(const GofReport& report) {
  return nlohmann::json{{"test_name", report.test_name},
                        {"statistic", report.statistic},
                        {"threshold", report.threshold},
                        {"n_samples", report.n_samples},
                        {"seed", report.seed},
                        {"verdict", report.passed ? "pass" : "fail"},
                        {"details", report.details}};
}

nlohmann::json to_json(std::span<const GofReport> reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    arr.push_back(to_json(r));
  }
  return arr;
}

CdfFunction vg_cdf_function(const VarianceGamma& d) {
  return CdfFunction{[d](double x) { return cdf(d, x); },
                     [d](std::span<const double> xs) { return cdf_sorted(d, xs); }};
}

double ks_threshold(double alpha, std::size_t n) {
  double c = 0.0;
  if (alpha == 0.01) {
    c = 1.628;
  } else if (alpha == 0.05) {
    c = 1.358;
  } else {
    throw ParameterError("ks_test: alpha must be 0.01 or 0.05");
  }
  if (n == 0) {
    throw SizeError("ks_test: empty sample");
  }
  return c / std::sqrt(static_cast<double>(n));
}

GofReport ks_test(const SampleBatch& batch, const CdfFunction& cdf_fn, double alpha,
                  std::string test_name) {
  const std::size_t n = batch.size();
  if (n < 100) {
    throw SizeError("ks_test: needs at least 100 values for asymptotic critical values (got " +
                    std::to_string(n) + ")");
  }
  const double threshold = ks_threshold(alpha, n);
  std::vector<double> sorted = batch.values;
  std::sort(sorted.begin(), sorted.end());

  std::vector<double> f;
  if (cdf_fn.sorted_batch) {
    f = cdf_fn.sorted_batch(sorted);
  } else {
    f.reserve(n);
    for (double x : sorted) f.push_back(cdf_fn.pointwise(x));
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  double stat = 0.0;
  std::size_t where = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(f[i] >= 0.0 && f[i] <= 1.0)) {
      throw DomainError("ks_test: cdf returned " + format_number(f[i]) + " outside [0, 1]");
    }
    const double above = static_cast<double>(i + 1) * inv_n - f[i];
    const double below = f[i] - static_cast<double>(i) * inv_n;
    const double dev = std::max(above, below);
    if (dev > stat) {
      stat = dev;
      where = i;
    }
  }
  std::string details = "generator=" + batch.generator +
                        " stream=" + std::to_string(batch.stream_id) +
                        " alpha=" + format_short(alpha) +
                        " argmax_x=" + format_number(sorted[where]);
  return make_report(std::move(test_name), stat, threshold, n, batch.seed, std::move(details));
}

GofReport ks_test(const SampleBatch& batch, const std::function<double(double)>& cdf_fn,
                  double alpha, std::string test_name) {
  return ks_test(batch, CdfFunction{cdf_fn, {}}, alpha, std::move(test_name));
}

GofReport check_normalization(const std::function<double(double)>& pdf_fn, double center,
                              double tol, std::string test_name) {
  const auto left = detail::integrate_half_line([&](double t) { return pdf_fn(center - t); }, 1e-12);
  const auto right = detail::integrate_half_line([&](double t) { return pdf_fn(center + t); }, 1e-12);
  const double integral = left.value + right.value;
  double stat = std::fabs(integral - 1.0) + left.error + right.error;
  std::string details = "integral=" + format_number(integral) +
                        " error_estimate=" + format_number(left.error + right.error);
  if (!left.converged || !right.converged) {
    details += " quadrature did not converge";
    if (!std::isfinite(stat)) stat = DBL_MAX;
  }
  return make_report(std::move(test_name), stat, tol, 0, 0, std::move(details));
}

GofReport moment_check(const SampleBatch& batch, double mean, double variance, double k_sigma,
                       std::string test_name) {
  const std::size_t n = batch.size();
  if (n < 10'000) {
    throw SizeError("moment_check: needs at least 1e4 values (got " + std::to_string(n) + ")");
  }
  if (!(variance > 0.0) || !(k_sigma > 0.0)) {
    throw ParameterError("moment_check: variance and k_sigma must be positive");
  }
  const double dn = static_cast<double>(n);
  long double sum = 0.0L;
  for (double v : batch.values) sum += v;
  const double m = static_cast<double>(sum / n);
  long double s2 = 0.0L;
  long double s4 = 0.0L;
  for (double v : batch.values) {
    const long double d = v - m;
    const long double d2 = d * d;
    s2 += d2;
    s4 += d2 * d2;
  }
  const double var = static_cast<double>(s2 / (n - 1));
  const double m2 = static_cast<double>(s2 / n);
  const double m4 = static_cast<double>(s4 / n);

  const double z_mean = std::fabs(m - mean) / std::sqrt(variance / dn);
  // Var(s^2) ~ (mu4 - sigma^4) / N, estimated from the sample.
  const double se_var = std::sqrt(std::max(m4 - m2 * m2, 0.0) / dn);
  const double z_var = se_var > 0.0 ? std::fabs(var - variance) / se_var : INFINITY;
  std::string details = "sample_mean=" + format_number(m) + " sample_variance=" +
                        format_number(var) + " z_mean=" + format_number(z_mean) +
                        " z_variance=" + format_number(z_var);
  return make_report(std::move(test_name), std::max(z_mean, z_var), k_sigma, n, batch.seed,
                     std::move(details));
}

double bessel_k_by_quadrature(double nu, double x) {
  if (!std::isfinite(nu) || !std::isfinite(x) || x <= 0.0) {
    throw DomainError("bessel_k_by_quadrature: requires finite nu and x > 0");
  }
  nu = std::fabs(nu);
  const auto log_cosh = [](double y) {
    y = std::fabs(y);
    return y + std::log1p(std::exp(-2.0 * y)) - std::log(2.0);
  };
  // log of e^{-x (cosh t - 1)} cosh(nu t); cosh t - 1 = 2 sinh^2(t/2)
  const auto phi = [&](double t) {
    const double sh = std::sinh(0.5 * t);
    return -2.0 * x * sh * sh + log_cosh(nu * t);
  };
  const double t_peak = nu > 0.0 ? std::asinh(nu / x) : 0.0;
  const double log_peak = std::max(phi(0.0), phi(t_peak));
  // Truncate once the integrand is below 1e-18 of its peak.
  const double cutoff = log_peak - std::log(1e18);
  double t_end = t_peak + 1.0;
  while (phi(t_end) > cutoff) {
    t_end += std::max(1.0, 0.5 * t_end);
  }
  const auto g = [&](double t) { return std::exp(phi(t) - log_peak); };
  double integral = 0.0;
  if (t_peak > 0.0) {
    integral += detail::integrate_finite(g, 0.0, t_peak, 1e-15).value;
  }
  integral += detail::integrate_finite(g, t_peak, t_end, 1e-15).value;
  return std::exp(log_peak - x + std::log(integral));
}

}  // namespace vgprod
