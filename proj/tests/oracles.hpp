#pragma once

// Reference values computed independently of the library: brute-force sums,
// Boost.Math special functions and quadrature, closed-form moments.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/lambert_w.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

// zeta(m) = sum_{k<=K} k^-m plus the integral bounds on the tail,
// K^(1-m)/(m-1) >= tail >= (K+1)^(1-m)/(m-1); midpoint of the two.
inline double zeta_direct(int m, long K = 200000) {
  double s = 0.0;
  for (long k = K; k >= 1; --k) s += std::pow(static_cast<double>(k), -m);
  const double hi = std::pow(static_cast<double>(K), 1.0 - m) / (m - 1.0);
  const double lo = std::pow(static_cast<double>(K + 1), 1.0 - m) / (m - 1.0);
  return s + 0.5 * (hi + lo);
}

inline double lambert_wm1(double x) { return boost::math::lambert_wm1(x); }
inline double trigamma(double x) { return boost::math::trigamma(x); }
inline double zeta(double s) { return boost::math::zeta(s); }

// Closed-form moments of the bare Ohmic form factors.
inline double exp_integral(double g, double L) { return g * g * L * L; }
inline double exp_first_moment(double g, double L) { return 2.0 * g * g * L * L * L; }
inline double poly_integral(int n, double g, double L) { return g * g * L * L / (2.0 * (n - 1)); }
// integral x^2 / (1 + x^2)^n dx over (0, inf) = (sqrt(pi)/4) Gamma(n - 3/2) / Gamma(n).
inline double poly_first_moment(int n, double g, double L) {
  return g * g * L * L * L * std::sqrt(std::numbers::pi) / 4.0 * std::exp(std::lgamma(n - 1.5) - std::lgamma(n));
}

// Boost exp-sinh quadrature over (a, inf).
inline double half_line(const std::function<double(double)>& f, double a = 0.0) {
  boost::math::quadrature::exp_sinh<double> q;
  return q.integrate([&](double x) { return f(a + x); });
}

// Adaptive Gauss-Kronrod 61 from Boost over [a, b].
inline double finite(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 30, 1e-13);
}

// Composite Simpson on [a, b] with n (even) panels; a brute-force check for
// oscillatory integrands with known smooth structure.
inline double simpson(const std::function<double(double)>& f, double a, double b, long n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (long i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace oracle
