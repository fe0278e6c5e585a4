#pragma once

#include <functional>
#include <vector>

namespace zenolab {

/// Controls for the adaptive Gauss-Kronrod integrator.
///
/// `split_points` are forced interval boundaries (kinks, kernel zeros, poles
/// of a removable singularity). They are sorted and deduplicated on use, so
/// callers can append without care for order.
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 400000;
  std::vector<double> split_points;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
  long intervals = 0;
};

using Integrand = std::function<double(double)>;

/// Integrates f over [a, b]; either end may be infinite. Infinite tails are
/// mapped onto [0, 1) with x = c +/- s / (1 - s).
///
/// Throws Error(NoConvergence) if the global error estimate is still above
/// max(abs_tol, rel_tol * |value|) after max_subdivisions bisections.
QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});

/// Integral over the whole real line.
QuadratureResult integrate_line(const Integrand& f, const QuadratureSpec& spec = {});

/// Lower real branch W_{-1} of Lambert's function: w * exp(w) = x, w <= -1.
/// Defined on [-1/e, 0); throws Error(DomainError) elsewhere.
double lambert_w_m1(double x);

/// Riemann zeta at odd integers 3 <= m <= 15 (Euler-Maclaurin).
double zeta_odd(int m);

/// psi'(x) for x > 0.
double trigamma(double x);

/// Sum over j > j_max of (j + 1/2)^-2, i.e. trigamma(j_max + 3/2).
double half_integer_inverse_square_tail(long j_max);

/// Bose-Einstein occupation 1 / (exp(beta * omega) - 1). beta may be +inf.
double bose_occupation(double omega, double beta);

/// alpha_n = (sqrt(pi)/2) Gamma(n - 3/2) / Gamma(n - 1), for n >= 2.
/// Equals the bandwidth of the order-n polynomial form factor in units of its cutoff.
double alpha_n(int n);

/// `points` values log-spaced over [lo, hi] (inclusive).
std::vector<double> log_grid(double lo, double hi, int points);
std::vector<double> lin_grid(double lo, double hi, int points);

}  // namespace zenolab
