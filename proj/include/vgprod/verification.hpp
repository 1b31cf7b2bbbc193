#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "vgprod/sample_batch.hpp"
#include "vgprod/variance_gamma.hpp"

namespace vgprod {

/// Outcome of one goodness-of-fit or identity check. passed is true exactly
/// when statistic <= threshold; build reports with make_report.
struct GofReport {
  std::string test_name;
  double statistic = 0.0;
  double threshold = 0.0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  bool passed = false;
  std::string details;
};

GofReport make_report(std::string test_name, double statistic, double threshold,
                      std::size_t n_samples, std::uint64_t seed, std::string details);

/// Reports named "negative/..." are controls that are expected to fail.
bool is_negative_control(const GofReport& report);

nlohmann::json to_json(const GofReport& report);
nlohmann::json to_json(std::span<const GofReport> reports);

/// A distribution function. sorted_batch, when set, evaluates an ascending
/// range in one pass and is preferred for large samples.
struct CdfFunction {
  std::function<double(double)> pointwise;
  std::function<std::vector<double>(std::span<const double>)> sorted_batch;
};

CdfFunction vg_cdf_function(const VarianceGamma& d);

/// Asymptotic Kolmogorov-Smirnov critical value c(alpha) / sqrt(n) with
/// c(0.01) = 1.628 and c(0.05) = 1.358. Other alphas are a ParameterError.
double ks_threshold(double alpha, std::size_t n);

/// sup |F_n - F| over the sample. Needs at least 100 values (SizeError);
/// a cdf value outside [0, 1] is a DomainError.
GofReport ks_test(const SampleBatch& batch, const CdfFunction& cdf, double alpha,
                  std::string test_name = "ks");
GofReport ks_test(const SampleBatch& batch, const std::function<double(double)>& cdf,
                  double alpha, std::string test_name = "ks");

/// Integrates pdf over the real line, split at center (the one allowed
/// integrable singularity). statistic = |integral - 1| plus the quadrature
/// error estimate, so a non-converged integral fails instead of throwing.
/// pdf sees center + t, so offsets below ulp(center) are lost; keep the
/// singular point at 0 for densities that blow up faster than log|x|.
GofReport check_normalization(const std::function<double(double)>& pdf, double center,
                              double tol, std::string test_name = "normalization");

/// Passes when the sample mean lies within k_sigma sqrt(variance / N) of mean
/// and the sample variance within k_sigma asymptotic standard errors of
/// variance. statistic is the larger of the two z-scores. Needs N >= 1e4.
GofReport moment_check(const SampleBatch& batch, double mean, double variance, double k_sigma,
                       std::string test_name = "moments");

/// K_nu(x) straight from the integral of e^{-x cosh t} cosh(nu t) over
/// t >= 0, by adaptive quadrature. Reference values for the series code.
double bessel_k_by_quadrature(double nu, double x);

/// Parameters of the full verification grid. Every field has a default; see
/// parse_suite_config for the JSON layout.
struct SuiteConfig {
  std::uint64_t seed = 8;
  double alpha = 0.01;
  std::size_t ks_samples = 1'000'000;

  std::vector<double> sigma_x = {0.5, 1.0, 2.0};
  std::vector<double> sigma_y = {0.5, 1.0, 3.0};
  std::vector<double> rho = {-0.9, -0.5, 0.0, 0.5, 0.9};

  // Sample-mean law
  double mean_sigma_x = 1.0;
  double mean_sigma_y = 1.0;
  double mean_rho = 0.5;
  std::vector<std::size_t> mean_n = {2, 5, 10};
  std::size_t mean_blocks = 100'000;

  // (theta, sigma) pairs for the two-normal representation and convolution
  std::vector<std::pair<double, double>> closure_params = {{0.0, 1.0},
                                                           {0.5, 0.86602540378443865}};
  std::size_t closure_samples = 1'000'000;

  double moment_sigma_x = 1.0;
  double moment_sigma_y = 1.0;
  double moment_rho = 0.5;
  std::size_t moment_samples = 10'000'000;
  double k_sigma = 4.0;

  std::vector<double> bessel_orders = {0.0, 0.5, 1.0, 1.5, 2.5, 5.0, 9.5};
  std::vector<double> bessel_args = {0.01, 0.1, 1.0, 5.0, 10.0, 30.0};
  double bessel_tol = 1e-10;

  double normalization_tol = 1e-6;
  std::vector<double> density_points = {-5, -2, -1, -0.5, -0.1, 0.1, 0.5, 1, 2, 5};
  double identity_tol = 1e-12;
  double oracle_tol = 1e-6;

  std::size_t collapse_points = 601;
  double collapse_from = -3.0;
  double collapse_to = 3.0;
  double collapse_tol = 1e-10;

  double negative_shift = 0.1;
};

/// Parses a JSON suite configuration. Missing keys keep their defaults;
/// syntax errors, unknown keys and wrong types raise ConfigError with the
/// line/column or key path.
SuiteConfig parse_suite_config(const std::string& text);

// Check groups, one per acceptance criterion. run_suite runs all of them.
std::vector<GofReport> check_bessel_oracle(const SuiteConfig& cfg);
std::vector<GofReport> check_normalization_grid(const SuiteConfig& cfg);
std::vector<GofReport> check_product_law(const SuiteConfig& cfg);  // KS + negative controls
std::vector<GofReport> check_mean_law(const SuiteConfig& cfg);
std::vector<GofReport> check_closed_forms(const SuiteConfig& cfg);
std::vector<GofReport> check_density_oracle(const SuiteConfig& cfg);
std::vector<GofReport> check_mean_collapse(const SuiteConfig& cfg);
std::vector<GofReport> check_closure(const SuiteConfig& cfg);
std::vector<GofReport> check_moments(const SuiteConfig& cfg);  // + negative control

/// Report list sorted by test name. Deterministic for a fixed configuration.
std::vector<GofReport> run_suite(const SuiteConfig& cfg);

/// True when every regular check passed and every negative control failed.
bool suite_passed(std::span<const GofReport> reports);

}  // namespace vgprod
