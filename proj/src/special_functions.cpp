#include "vgprod/special_functions.hpp"

#include <array>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "vgprod/errors.hpp"

namespace vgprod {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
constexpr double kEps = 1e-16;
constexpr int kMaxIterations = 100000;
// Orders beyond this would make the upward recurrence the dominant cost.
constexpr double kMaxOrder = 1e7;

// Taylor coefficients of 1/Gamma(1 + mu) = sum_j kRecipGamma[j] * mu^j.
constexpr std::array<double, 29> kRecipGamma = {
    1.0,
    0.5772156649015328606065,
    -0.655878071520253881077,
    -0.042002635034095235529,
    0.1665386113822914895017,
    -0.04219773455554433674821,
    -0.009621971527876973562115,
    0.007218943246663099542395,
    -0.001165167591859065112114,
    -0.0002152416741149509728157,
    0.0001280502823881161861532,
    -0.00002013485478078823865569,
    -0.000001250493482142670657345,
    0.000001133027231981695882374,
    -2.05633841697760710345e-7,
    6.116095104481415817862e-9,
    5.002007644469222930056e-9,
    -1.181274570487020144588e-9,
    1.043426711691100510492e-10,
    7.78226343990507125405e-12,
    -3.696805618642205708188e-12,
    5.100370287454475979015e-13,
    -2.058326053566506783222e-14,
    -5.34812253942301798237e-15,
    1.226778628238260790159e-15,
    -1.181259301697458769514e-16,
    1.18669225475160033258e-18,
    1.412380655318031781556e-18,
    -2.298745684435370206592e-19,
};

// K_nu(x) = ldexp(mantissa, exp2) * exp(exp_arg). exp_arg is either 0 or -x.
struct KParts {
  double mantissa = 0.0;
  int exp2 = 0;
  double exp_arg = 0.0;
};

struct TemmeGammas {
  double gam1;   // (1/G(1-mu) - 1/G(1+mu)) / (2 mu)
  double gam2;   // (1/G(1-mu) + 1/G(1+mu)) / 2
  double gampl;  // 1/G(1+mu)
  double gammi;  // 1/G(1-mu)
};

TemmeGammas temme_gammas(double mu) {
  // Split the series into even and odd powers so gam1 has no cancellation.
  double even = 0.0;
  double odd = 0.0;
  const double mu2 = mu * mu;
  for (std::size_t j = kRecipGamma.size(); j-- > 0;) {
    if (j % 2 == 0) {
      even = even * mu2 + kRecipGamma[j];
    } else {
      odd = odd * mu2 + kRecipGamma[j];
    }
  }
  // even = sum b_{2k} mu^{2k}, odd = sum b_{2k+1} mu^{2k}
  return TemmeGammas{-odd, even, even + mu * odd, even - mu * odd};
}

void check_args(double nu, double x) {
  if (!std::isfinite(nu) || !std::isfinite(x) || x <= 0.0) {
    throw DomainError("bessel_k: requires finite nu and finite x > 0 (nu=" +
                      std::to_string(nu) + ", x=" + std::to_string(x) + ")");
  }
  if (std::fabs(nu) > kMaxOrder) {
    throw DomainError("bessel_k: order magnitude exceeds 1e7");
  }
}

// K_mu and K_{mu+1} for |mu| < 1/2 by Temme's series, valid for x < 2.
// Both values are returned relative to a shared power-of-two scale.
void temme_series(double mu, double x, double& k_mu, double& k_mu1, int& exp2) {
  const double x2 = 0.5 * x;
  const double pimu = kPi * mu;
  const double fact = std::fabs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
  double d = -std::log(x2);
  double e = mu * d;
  const double fact2 = std::fabs(e) < kEps ? 1.0 : std::sinh(e) / e;
  const TemmeGammas g = temme_gammas(mu);

  double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
  double sum = ff;
  e = std::exp(e);
  double p = 0.5 * e / g.gampl;
  double q = 0.5 / (e * g.gammi);
  double c = 1.0;
  d = x2 * x2;
  double sum1 = p;
  const double mu2 = mu * mu;
  for (int i = 1; i <= kMaxIterations; ++i) {
    const double di = i;
    ff = (di * ff + p + q) / (di * di - mu2);
    c *= d / di;
    p /= di - mu;
    q /= di + mu;
    const double del = c * ff;
    sum += del;
    sum1 += c * (p - di * ff);
    if (std::fabs(del) < std::fabs(sum) * kEps) {
      break;
    }
  }
  // Normalize so sum1 * (2/x) cannot overflow for tiny x.
  exp2 = std::ilogb(sum1) + 2;
  k_mu = std::ldexp(sum, -exp2);
  k_mu1 = std::ldexp(sum1, -exp2) * (2.0 / x);
}

// e^x K_mu and e^x K_{mu+1} for |mu| <= 1/2 by Steed's method on CF2, x >= 2.
void steed_cf2(double mu, double x, double& k_mu, double& k_mu1) {
  const double mu2 = mu * mu;
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25 - mu2;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i <= kMaxIterations; ++i) {
    a -= 2 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::fabs(dels / s) < kEps) {
      break;
    }
  }
  h = a1 * h;
  k_mu = std::sqrt(kPi / (2.0 * x)) / s;
  k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
}

KParts bessel_k_parts(double nu, double x) {
  nu = std::fabs(nu);
  KParts out;
  double mu = 0.0;
  long steps = 0;
  double k_mu = 0.0;
  double k_mu1 = 0.0;

  if (nu - std::floor(nu) == 0.5) {
    // K_{1/2}(x) = K_{-1/2}(x) = sqrt(pi / (2x)) e^{-x}; recur upward from -1/2.
    mu = -0.5;
    steps = static_cast<long>(nu + 0.5);
    k_mu = std::sqrt(kPi / (2.0 * x));
    k_mu1 = k_mu;
    out.exp_arg = -x;
  } else {
    steps = static_cast<long>(nu + 0.5);
    mu = nu - static_cast<double>(steps);
    if (x < 2.0) {
      temme_series(mu, x, k_mu, k_mu1, out.exp2);
    } else {
      steed_cf2(mu, x, k_mu, k_mu1);
      out.exp_arg = -x;
    }
  }

  const double two_over_x = 2.0 / x;
  const double limit = DBL_MAX / (4.0 * (nu + 1.0) * std::fmax(two_over_x, 1.0));
  for (long i = 1; i <= steps; ++i) {
    const double next = (mu + static_cast<double>(i)) * two_over_x * k_mu1 + k_mu;
    k_mu = k_mu1;
    k_mu1 = next;
    if (k_mu1 > limit) {
      const int shift = std::ilogb(k_mu1);
      k_mu1 = std::ldexp(k_mu1, -shift);
      k_mu = std::ldexp(k_mu, -shift);
      out.exp2 += shift;
    }
  }
  out.mantissa = k_mu;
  return out;
}

double assemble(const KParts& parts, double extra_exp_arg) {
  const double arg = parts.exp_arg + extra_exp_arg;
  if (parts.exp2 == 0) {
    return arg == 0.0 ? parts.mantissa : parts.mantissa * std::exp(arg);
  }
  if (arg == 0.0) {
    return std::ldexp(parts.mantissa, parts.exp2);
  }
  return std::exp(std::log(parts.mantissa) + parts.exp2 * kLn2 + arg);
}

}  // namespace

double bessel_k(double nu, double x) {
  check_args(nu, x);
  return assemble(bessel_k_parts(nu, x), 0.0);
}

double bessel_k_scaled(double nu, double x) {
  check_args(nu, x);
  return assemble(bessel_k_parts(nu, x), x);
}

double log_bessel_k(double nu, double x) {
  check_args(nu, x);
  const KParts parts = bessel_k_parts(nu, x);
  return std::log(parts.mantissa) + parts.exp2 * kLn2 + parts.exp_arg;
}

double log_gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError("log_gamma: requires finite x > 0 (x=" + std::to_string(x) + ")");
  }
  return boost::math::lgamma(x);
}

}  // namespace vgprod
