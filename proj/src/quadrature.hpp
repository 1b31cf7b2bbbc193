#pragma once

// Thin wrappers over Boost.Math double-exponential and Gauss-Kronrod rules.
// Integrands returning a non-finite value at an isolated node (a density
// evaluated exactly on its singular point) contribute zero there.

#include <cmath>
#include <exception>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace vgprod::detail {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
  bool converged = false;
};

template <class F>
struct FiniteOrZero {
  const F* f;
  double operator()(double t) const {
    const double v = (*f)(t);
    return std::isfinite(v) ? v : 0.0;
  }
};

template <class F>
FiniteOrZero<F> finite_or_zero(const F& f) {
  return FiniteOrZero<F>{&f};
}

inline bool within(double error, double l1, double rel_tol) {
  return std::isfinite(error) && error <= rel_tol * std::fmax(l1, 1e-300) * 10.0;
}

/// Integral of f over [split, inf).
template <class F>
QuadResult integrate_tail(const F& f, double split, double rel_tol) {
  static boost::math::quadrature::exp_sinh<double> rule(12);
  QuadResult r;
  try {
    r.value = rule.integrate(finite_or_zero(f), split, std::numeric_limits<double>::infinity(),
                             rel_tol, &r.error, &r.l1);
  } catch (const std::exception&) {
    r.value = NAN;
    r.error = INFINITY;
    return r;
  }
  r.converged = std::isfinite(r.value) && within(r.error, r.l1, rel_tol);
  return r;
}

/// Integral of f over [a, b]; tolerates integrable endpoint singularities.
template <class F>
QuadResult integrate_finite(const F& f, double a, double b, double rel_tol) {
  static boost::math::quadrature::tanh_sinh<double> rule(15);
  QuadResult r;
  if (a == b) {
    r.converged = true;
    return r;
  }
  try {
    r.value = rule.integrate(finite_or_zero(f), a, b, rel_tol, &r.error, &r.l1);
  } catch (const std::exception&) {
    r.value = NAN;
    r.error = INFINITY;
    return r;
  }
  r.converged = std::isfinite(r.value) && within(r.error, r.l1, rel_tol);
  return r;
}

/// Integral of f over [0, inf), with an integrable singularity allowed at 0:
/// tanh-sinh on [0, split], exp-sinh beyond.
template <class F>
QuadResult integrate_half_line(const F& f, double rel_tol, double split = 1.0) {
  const QuadResult head = integrate_finite(f, 0.0, split, rel_tol);
  const QuadResult tail = integrate_tail(f, split, rel_tol);
  QuadResult r;
  r.value = head.value + tail.value;
  r.error = head.error + tail.error;
  r.l1 = head.l1 + tail.l1;
  r.converged = head.converged && tail.converged;
  return r;
}

/// Adaptive Gauss-Kronrod (7/15) on a smooth integrand over [a, b].
template <class F>
QuadResult integrate_smooth(const F& f, double a, double b, double rel_tol,
                            unsigned max_depth = 20) {
  QuadResult r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      finite_or_zero(f), a, b, max_depth, rel_tol, &r.error, &r.l1);
  r.converged = std::isfinite(r.value) && within(r.error, r.l1, rel_tol);
  return r;
}

}  // namespace vgprod::detail
