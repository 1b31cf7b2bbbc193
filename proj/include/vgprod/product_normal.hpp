#pragma once

#include <cstddef>

#include "vgprod/rng.hpp"
#include "vgprod/sample_batch.hpp"
#include "vgprod/variance_gamma.hpp"

namespace vgprod {

/// Zero-mean bivariate normal (X, Y) with standard deviations sigma_x, sigma_y
/// and correlation rho. |rho| = 1 is rejected: the product would be a scaled
/// chi-squared, outside the variance-gamma family.
class BivariateNormalZeroMean {
 public:
  /// Throws ParameterError unless sigma_x, sigma_y > 0 and |rho| < 1.
  BivariateNormalZeroMean(double sigma_x, double sigma_y, double rho);

  double sigma_x() const { return sigma_x_; }
  double sigma_y() const { return sigma_y_; }
  double rho() const { return rho_; }

 private:
  double sigma_x_;
  double sigma_y_;
  double rho_;
};

/// Law of the mean of n independent copies of Z = XY.
struct MeanLawRequest {
  BivariateNormalZeroMean base;
  std::size_t n;
};

/// Z = XY ~ VG(1, rho sx sy, sx sy sqrt(1 - rho^2), 0).
VarianceGamma product_distribution(const BivariateNormalZeroMean& bv);

/// Zbar ~ VG(n, rho sx sy / n, sx sy sqrt(1 - rho^2) / n, 0). SizeError for n = 0.
VarianceGamma mean_distribution(const MeanLawRequest& req);

/// Closed-form density of Z:
///   exp(rho x / (s (1-rho^2))) K_0(|x| / (s (1-rho^2))) / (pi s sqrt(1-rho^2)),
/// s = sigma_x sigma_y. +inf at x = 0.
double pdf_product(const BivariateNormalZeroMean& bv, double x);

/// Closed-form density of Zbar for n >= 2 (SizeError otherwise; use
/// pdf_product for a single copy). Finite at x = 0.
double pdf_mean(const MeanLawRequest& req, double x);

/// Z draws built the way the orthogonalization argument builds them:
/// X, W independent standard normals, Y = sigma_y (rho X + sqrt(1-rho^2) W),
/// Z = (sigma_x X) Y. Independent of the variance-gamma sampler.
SampleBatch sample_product(const BivariateNormalZeroMean& bv, RngStream& rng, std::size_t n);

/// Means of `blocks` consecutive, non-overlapping groups of n sample_product
/// draws.
SampleBatch sample_mean(const MeanLawRequest& req, RngStream& rng, std::size_t blocks);

/// Brute-force density of Z from the change-of-variables integral
/// f_Z(x) = int f_{X,Y}(t, x/t) / |t| dt, evaluated by quadrature in
/// u = ln|t| on each sign of t. Shares no code with the Bessel path.
/// DomainError for x = 0 or non-finite x.
double oracle_pdf_product(const BivariateNormalZeroMean& bv, double x);

}  // namespace vgprod
