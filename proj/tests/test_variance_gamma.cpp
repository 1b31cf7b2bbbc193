#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "vgprod/errors.hpp"
#include "vgprod/variance_gamma.hpp"
#include "vgprod/verification.hpp"

namespace vgprod {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rel_err(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

// VG(2, theta, sigma, 0) is the asymmetric Laplace law
// f(x) = exp((theta x - A |x|) / sigma^2) / (2A), A = sqrt(theta^2 + sigma^2).
double laplace_pdf(double theta, double sigma, double x) {
  const double a = std::hypot(theta, sigma);
  return std::exp((theta * x - a * std::fabs(x)) / (sigma * sigma)) / (2.0 * a);
}

double laplace_cdf(double theta, double sigma, double x) {
  const double s2 = sigma * sigma;
  const double a = std::hypot(theta, sigma);
  if (x < 0.0) return s2 / (2.0 * a * (a + theta)) * std::exp((a + theta) * x / s2);
  return 1.0 - s2 / (2.0 * a * (a - theta)) * std::exp(-(a - theta) * x / s2);
}

TEST(VarianceGamma, Construction) {
  const VarianceGamma d = make_vg(3.0, 0.5, 2.0, -1.0);
  EXPECT_EQ(d.r(), 3.0);
  EXPECT_EQ(d.theta(), 0.5);
  EXPECT_EQ(d.sigma(), 2.0);
  EXPECT_EQ(d.mu(), -1.0);
  EXPECT_EQ(d.bessel_order(), 1.0);
  EXPECT_DOUBLE_EQ(d.decay_rate(), std::hypot(0.5, 2.0) / 4.0);
  EXPECT_EQ(d, make_vg(3.0, 0.5, 2.0, -1.0));
}

TEST(VarianceGamma, RejectsInvalidParameters) {
  EXPECT_THROW(make_vg(0.0, 0.0, 1.0, 0.0), ParameterError);
  EXPECT_THROW(make_vg(-1.0, 0.0, 1.0, 0.0), ParameterError);
  EXPECT_THROW(make_vg(1.0, 0.0, 0.0, 0.0), ParameterError);
  EXPECT_THROW(make_vg(1.0, 0.0, -1.0, 0.0), ParameterError);
  EXPECT_THROW(make_vg(1.0, std::nan(""), 1.0, 0.0), ParameterError);
  EXPECT_THROW(make_vg(1.0, 0.0, 1.0, kInf), ParameterError);
}

struct PdfCase {
  double r, theta, sigma, mu, x, value;
};

// mpmath at 40 digits straight from the density formula.
constexpr PdfCase kPdfTable[] = {
    {1.0, 0.0, 1.0, 0.0, 1.0, 0.13401624101699427},
    {1.0, 0.3, 0.8, 0.2, 1.1, 0.19284559589215557},
    {3.5, -0.4, 1.2, -1.0, 0.5, 0.074590555004650338},
    {0.5, 0.1, 1.0, 0.0, 2.0, 0.021688302545262803},
    {5.0, 0.2, 0.7, 0.0, -0.3, 0.21883916563659558},
};

TEST(VarianceGamma, DensityReferenceValues) {
  for (const auto& c : kPdfTable) {
    const VarianceGamma d = make_vg(c.r, c.theta, c.sigma, c.mu);
    EXPECT_LE(rel_err(pdf(d, c.x), c.value), 1e-13) << "r=" << c.r << " x=" << c.x;
    EXPECT_NEAR(log_pdf(d, c.x), std::log(c.value), 1e-13) << "r=" << c.r << " x=" << c.x;
  }
}

TEST(VarianceGamma, LaplaceCase) {
  for (double theta : {-0.7, 0.0, 0.4}) {
    const VarianceGamma d = make_vg(2.0, theta, 1.3, 0.0);
    for (double x : {-6.0, -1.0, -0.01, 0.0, 0.3, 2.0, 9.0}) {
      EXPECT_LE(rel_err(pdf(d, x), laplace_pdf(theta, 1.3, x)), 1e-14) << theta << " " << x;
      EXPECT_NEAR(cdf(d, x), laplace_cdf(theta, 1.3, x), 1e-10) << theta << " " << x;
    }
  }
  // n = 2, rho = 0 sample-mean law, density e^{-2|x|}.
  EXPECT_NEAR(cdf(make_vg(2.0, 0.0, 0.5, 0.0), 0.3), 0.72559418195298678, 1e-10);
  EXPECT_NEAR(cdf(make_vg(2.0, 0.0, 0.25, 0.0), 0.3), 1.0 - 0.5 * std::exp(-1.2), 1e-10);
}

TEST(VarianceGamma, ValueAtLocation) {
  EXPECT_EQ(pdf(make_vg(1.0, 0.3, 1.0, 2.0), 2.0), kInf);
  EXPECT_EQ(pdf(make_vg(0.4, 0.0, 1.0, 0.0), 0.0), kInf);
  // r > 1: finite, and approached like |x - mu|^min(r-1, 1).
  for (double r : {1.2, 2.0, 3.5, 10.0}) {
    const VarianceGamma d = make_vg(r, -0.4, 1.2, 0.0);
    const double at = pdf(d, 0.0);
    ASSERT_TRUE(std::isfinite(at)) << r;
    const double y = r < 2.0 ? 1e-60 : 1e-9;
    EXPECT_NEAR(pdf(d, y), at, 1e-6 * at) << r;
    EXPECT_NEAR(pdf(d, -y), at, 1e-6 * at) << r;
  }
  // Laplace value 1/(2A) at the location.
  EXPECT_DOUBLE_EQ(pdf(make_vg(2.0, 0.4, 1.3, 0.0), 0.0), 1.0 / (2.0 * std::hypot(0.4, 1.3)));
}

TEST(VarianceGamma, LogDensityInDeepTails) {
  const VarianceGamma unit = make_vg(1.0, 0.0, 1.0, 0.0);
  EXPECT_NEAR(log_pdf(unit, 1.0), -2.0097942847561883, 1e-12);
  EXPECT_NEAR(log_pdf(unit, 50.0), -52.877425541140330, 1e-9);
  EXPECT_NEAR(log_pdf(unit, 800.0), -804.26140054950930, 1e-9);
  EXPECT_EQ(pdf(unit, 800.0), 0.0);
  EXPECT_NEAR(log_pdf(make_vg(3.5, -0.4, 1.2, -1.0), 200.0), -229.95251058880548, 1e-9);
}

TEST(VarianceGamma, SkewOnlyEntersThroughTilt) {
  for (double r : {1.0, 2.3}) {
    const double theta = 0.35;
    const double sigma = 0.8;
    const VarianceGamma pos = make_vg(r, theta, sigma, 0.0);
    const VarianceGamma neg = make_vg(r, -theta, sigma, 0.0);
    for (double x : {-7.0, -1.0, 0.25, 3.0, 40.0}) {
      EXPECT_NEAR(log_pdf(pos, x) - log_pdf(neg, x), 2.0 * theta * x / (sigma * sigma),
                  1e-12 * (1.0 + std::fabs(x))) << r << " " << x;
    }
  }
}

TEST(VarianceGamma, LogAndLinearDensityAgree) {
  for (double r : {0.5, 1.0, 2.7, 8.0}) {
    const VarianceGamma d = make_vg(r, 0.6, 0.9, 0.5);
    for (double x = -10.0; x <= 10.0; x += 0.37) {
      const double p = pdf(d, x);
      if (p > 0.0) {
        EXPECT_NEAR(log_pdf(d, x), std::log(p), 1e-12) << r << " " << x;
      }
    }
  }
}

TEST(VarianceGamma, ReflectionFlipsSkew) {
  for (double r : {1.0, 2.5}) {
    const VarianceGamma d = make_vg(r, 0.7, 1.1, 0.0);
    const VarianceGamma m = make_vg(r, -0.7, 1.1, 0.0);
    for (double x : {-4.0, -0.5, 0.2, 3.0}) {
      EXPECT_LE(rel_err(pdf(d, x), pdf(m, -x)), 1e-14);
      EXPECT_NEAR(cdf(d, x), 1.0 - cdf(m, -x), 1e-10);
    }
  }
}

TEST(VarianceGamma, IntegratesToOne) {
  for (double r : {0.3, 1.0, 1.5, 4.0, 20.0}) {
    for (double theta : {-1.0, 0.0, 0.5}) {
      // Offsets from a non-zero centre lose resolution below ulp(mu), which
      // matters only for the |x|^(r-1) singularity with r < 1.
      const VarianceGamma d = make_vg(r, theta, 0.8, r < 1.0 ? 0.0 : 0.3);
      const GofReport rep =
          check_normalization([&](double x) { return pdf(d, x); }, d.mu(), 1e-9);
      EXPECT_TRUE(rep.passed) << "r=" << r << " theta=" << theta << " " << rep.details;
    }
  }
}

TEST(VarianceGamma, MomentsMatchIntegrals) {
  using boost::math::quadrature::gauss_kronrod;
  const VarianceGamma d = make_vg(2.5, 0.4, 0.9, -0.2);
  const Moments m = moments(d);
  EXPECT_DOUBLE_EQ(m.mean, -0.2 + 2.5 * 0.4);
  EXPECT_DOUBLE_EQ(m.variance, 2.5 * (2.0 * 0.16 + 0.81));
  const auto first = [&](double x) { return x * pdf(d, x); };
  const auto second = [&](double x) { return (x - m.mean) * (x - m.mean) * pdf(d, x); };
  const double lo = -60.0;
  const double hi = 60.0;
  const double mean = gauss_kronrod<double, 61>::integrate(first, lo, -0.2, 15, 1e-12) +
                      gauss_kronrod<double, 61>::integrate(first, -0.2, hi, 15, 1e-12);
  const double var = gauss_kronrod<double, 61>::integrate(second, lo, -0.2, 15, 1e-12) +
                     gauss_kronrod<double, 61>::integrate(second, -0.2, hi, 15, 1e-12);
  EXPECT_NEAR(mean, m.mean, 1e-8);
  EXPECT_NEAR(var, m.variance, 1e-8);
}

TEST(VarianceGamma, CdfReferenceValues) {
  const VarianceGamma d = make_vg(1.0, 0.5, std::sqrt(0.75), 0.0);
  EXPECT_NEAR(cdf(d, -1.0), 0.021501614145420280, 1e-10);
  EXPECT_NEAR(cdf(d, 0.0), 1.0 / 3.0, 1e-10);
  EXPECT_NEAR(cdf(d, 1.0), 0.79438970389411467, 1e-10);
  EXPECT_NEAR(cdf(make_vg(3.5, -0.4, 1.2, -1.0), 0.0), 0.87338253534372314, 1e-10);
  const VarianceGamma sym = make_vg(1.0, 0.0, 1.0, 2.0);
  EXPECT_NEAR(cdf(sym, 2.0), 0.5, 1e-12);
  EXPECT_EQ(cdf(sym, kInf), 1.0);
  EXPECT_EQ(cdf(sym, -kInf), 0.0);
  EXPECT_THROW(cdf(sym, std::nan("")), DomainError);
}

TEST(VarianceGamma, CdfMonotoneAndBounded) {
  for (double r : {0.5, 1.0, 3.0}) {
    const VarianceGamma d = make_vg(r, -0.3, 0.7, 0.1);
    double prev = 0.0;
    for (double x = -8.0; x <= 8.0; x += 0.25) {
      const double c = cdf(d, x);
      EXPECT_GE(c, prev) << r << " " << x;
      EXPECT_LE(c, 1.0);
      prev = c;
    }
  }
}

TEST(VarianceGamma, SortedCdfMatchesPointwise) {
  const VarianceGamma d = make_vg(1.0, 0.5, 0.8, 0.25);
  std::vector<double> xs{-kInf, -30.0, -3.0, -1.0, -0.2, 0.0, 0.25, 0.25, 0.2500001, 0.3, 1.0,
                         1.0, 4.0, 50.0, kInf};
  const std::vector<double> got = cdf_sorted(d, xs);
  ASSERT_EQ(got.size(), xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    EXPECT_NEAR(got[i], cdf(d, xs[i]), 1e-10) << xs[i];
  }
  EXPECT_TRUE(cdf_sorted(d, std::vector<double>{}).empty());
  EXPECT_THROW(cdf_sorted(d, std::vector<double>{1.0, 0.0}), DomainError);
  EXPECT_THROW(cdf_sorted(d, std::vector<double>{0.0, std::nan("")}), DomainError);
}

TEST(VarianceGamma, SamplerMatchesCdf) {
  const VarianceGamma cases[] = {make_vg(1.0, 0.5, 0.8, 0.0), make_vg(0.4, -0.2, 1.5, 1.0),
                                 make_vg(6.0, 0.1, 0.5, -2.0)};
  std::uint64_t stream = 0;
  for (const auto& d : cases) {
    RngStream rng(11, stream++);
    const SampleBatch b = sample(d, rng, 100000);
    EXPECT_EQ(b.generator, "variance_gamma");
    const GofReport rep = ks_test(b, vg_cdf_function(d), 0.01);
    EXPECT_TRUE(rep.passed) << "r=" << d.r() << " D=" << rep.statistic;
    const Moments m = moments(d);
    EXPECT_TRUE(moment_check(b, m.mean, m.variance, 5.0).passed) << "r=" << d.r();
  }
}

TEST(VarianceGamma, SamplerIsDeterministic) {
  const VarianceGamma d = make_vg(0.7, 0.2, 1.0, 0.0);
  RngStream a(3, 9);
  RngStream b(3, 9);
  EXPECT_EQ(sample(d, a, 1000).values, sample(d, b, 1000).values);
  EXPECT_THROW(sample(d, a, 0), SizeError);
}

TEST(VarianceGamma, ConvolveAddsShapes) {
  const VarianceGamma a = make_vg(1.0, 0.3, 0.9, 0.0);
  const VarianceGamma b = make_vg(2.5, 0.3, 0.9, 0.0);
  EXPECT_EQ(convolve(a, b), make_vg(3.5, 0.3, 0.9, 0.0));
  EXPECT_THROW(convolve(a, make_vg(1.0, 0.31, 0.9, 0.0)), MismatchError);
  EXPECT_THROW(convolve(a, make_vg(1.0, 0.3, 1.0, 0.0)), MismatchError);
  EXPECT_THROW(convolve(a, make_vg(1.0, 0.3, 0.9, 0.1)), MismatchError);
}

// The density of the convolved law equals the numerical convolution of the
// two densities.
TEST(VarianceGamma, ConvolveMatchesNumericalConvolution) {
  using boost::math::quadrature::gauss_kronrod;
  const VarianceGamma a = make_vg(1.5, 0.3, 0.9, 0.0);
  const VarianceGamma b = make_vg(2.5, 0.3, 0.9, 0.0);
  const VarianceGamma sum = convolve(a, b);
  for (double x : {-2.0, 0.7, 3.0}) {
    const auto g = [&](double t) { return pdf(a, t) * pdf(b, x - t); };
    const double lo = std::min(0.0, x);
    const double hi = std::max(0.0, x);
    const double v = gauss_kronrod<double, 61>::integrate(g, -60.0, lo, 15, 1e-12) +
                      gauss_kronrod<double, 61>::integrate(g, lo, hi, 15, 1e-12) +
                      gauss_kronrod<double, 61>::integrate(g, hi, 60.0, 15, 1e-12);
    EXPECT_LE(rel_err(v, pdf(sum, x)), 1e-8) << x;
  }
}

TEST(VarianceGamma, ScaleTransformsDensity) {
  const VarianceGamma d = make_vg(1.7, 0.4, 0.6, 0.0);
  for (double a : {-2.0, 0.5, 3.0}) {
    const VarianceGamma s = scale(d, a);
    EXPECT_EQ(s, make_vg(1.7, a * 0.4, std::fabs(a) * 0.6, 0.0));
    for (double x : {-1.5, -0.1, 0.4, 2.0}) {
      EXPECT_LE(rel_err(pdf(s, x), pdf(d, x / a) / std::fabs(a)), 1e-13) << a << " " << x;
    }
  }
  EXPECT_THROW(scale(d, 0.0), ParameterError);
  EXPECT_THROW(scale(d, kInf), ParameterError);
  EXPECT_THROW(scale(make_vg(1.0, 0.0, 1.0, 1.0), 2.0), MismatchError);
}

TEST(VarianceGamma, DensityRejectsNonFinitePoints) {
  const VarianceGamma d = make_vg(1.0, 0.0, 1.0, 0.0);
  EXPECT_THROW(pdf(d, std::nan("")), DomainError);
  EXPECT_THROW(log_pdf(d, std::nan("")), DomainError);
  EXPECT_THROW(pdf(d, kInf), DomainError);
  EXPECT_THROW(log_pdf(d, -kInf), DomainError);
}

}  // namespace
}  // namespace vgprod
