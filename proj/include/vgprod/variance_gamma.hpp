#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vgprod/rng.hpp"
#include "vgprod/sample_batch.hpp"

namespace vgprod {

/// The variance-gamma law VG(r, theta, sigma, mu), r > 0 and sigma > 0, with
/// density
///
///   f(x) = e^{theta (x-mu) / sigma^2} (|x-mu| / (2 sqrt(theta^2+sigma^2)))^{(r-1)/2}
///          K_{(r-1)/2}(sqrt(theta^2+sigma^2) |x-mu| / sigma^2)
///          / (sigma sqrt(pi) Gamma(r/2)).
///
/// Immutable once built; construct through make_vg.
class VarianceGamma {
 public:
  double r() const { return r_; }
  double theta() const { return theta_; }
  double sigma() const { return sigma_; }
  double mu() const { return mu_; }

  /// Order (r-1)/2 of the Bessel factor.
  double bessel_order() const { return nu_; }
  /// Decay rate sqrt(theta^2 + sigma^2) / sigma^2 of the Bessel argument.
  double decay_rate() const { return decay_; }

  friend bool operator==(const VarianceGamma& a, const VarianceGamma& b) {
    return a.r_ == b.r_ && a.theta_ == b.theta_ && a.sigma_ == b.sigma_ && a.mu_ == b.mu_;
  }

 private:
  friend VarianceGamma make_vg(double r, double theta, double sigma, double mu);
  VarianceGamma() = default;

  double r_ = 1.0;
  double theta_ = 0.0;
  double sigma_ = 1.0;
  double mu_ = 0.0;
  double nu_ = 0.0;
  double decay_ = 1.0;
  double tilt_ = 0.0;        // theta / sigma^2
  double log_norm_ = 0.0;    // log of everything in f that does not depend on x
  double log_at_mu_ = 0.0;   // log f(mu) when r > 1

  friend double log_pdf_offset(const VarianceGamma& d, double offset);
};

/// Throws ParameterError unless r > 0, sigma > 0 and all inputs are finite.
VarianceGamma make_vg(double r, double theta, double sigma, double mu);

/// Density at x. +inf at x = mu when r <= 1; the finite limit there when r > 1.
double pdf(const VarianceGamma& d, double x);

/// ln pdf, computed in log space so it stays finite far into the tails.
double log_pdf(const VarianceGamma& d, double x);

/// ln f(mu + offset). Evaluating by offset keeps resolution next to the
/// singular point, which quadrature relies on.
double log_pdf_offset(const VarianceGamma& d, double offset);

/// P(X <= x) by quadrature of the density, split at mu. Accepts +-inf.
double cdf(const VarianceGamma& d, double x);

/// cdf at every point of an ascending range in one cumulative pass: the
/// density is integrated between consecutive points, so a batch costs a few
/// density evaluations per point instead of a full quadrature per point.
std::vector<double> cdf_sorted(const VarianceGamma& d, std::span<const double> sorted_xs);

struct Moments {
  double mean;
  double variance;
};

/// Mean mu + r theta and variance r (2 theta^2 + sigma^2).
Moments moments(const VarianceGamma& d);

/// n draws of mu + theta S + sigma sqrt(S) T with S ~ Gamma(r/2, rate 1/2)
/// and T ~ N(0, 1) independent.
SampleBatch sample(const VarianceGamma& d, RngStream& rng, std::size_t n);

/// Law of the sum of independent VG(r1, theta, sigma, 0) and
/// VG(r2, theta, sigma, 0): VG(r1 + r2, theta, sigma, 0). theta and sigma must
/// match exactly and both locations must be zero, otherwise MismatchError.
VarianceGamma convolve(const VarianceGamma& a, const VarianceGamma& b);

/// Law of a * W for W ~ VG(r, theta, sigma, 0): VG(r, a theta, |a| sigma, 0).
/// a = 0 is a ParameterError; a non-zero location is a MismatchError.
VarianceGamma scale(const VarianceGamma& d, double a);

}  // namespace vgprod
