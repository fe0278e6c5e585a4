#include "zenolab/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "zenolab/error.hpp"
#include "zenolab/numerics.hpp"

namespace zenolab {

namespace {

constexpr double kPi = std::numbers::pi;

void check_time(double tau, const char* what) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    std::ostringstream os;
    os << what << " must be finite and > 0, got " << tau;
    throw Error(ErrorCode::DomainError, os.str());
  }
}

double sinc2(double y) {
  if (std::abs(y) < 1e-4) return 1.0 - y * y / 3.0;
  const double s = std::sin(y) / y;
  return s * s;
}

// Frequencies where kappa^beta changes character: the kink at 0 and the
// scales of the form factor and of the temperature.
std::vector<double> feature_points(const ThermalSpectralDensity& tsd) {
  const double L = tsd.base.cutoff;
  std::vector<double> pts = {0.0, L, 10.0 * L, 100.0 * L, peak_frequency(tsd.base)};
  if (!tsd.zero_temperature()) {
    const double b = 1.0 / tsd.beta;
    for (double s : {1.0, 10.0, 100.0}) {
      pts.push_back(-s * b);
      pts.push_back(s * b);
    }
    pts.push_back(-L);
    pts.push_back(-10.0 * L);
  }
  return pts;
}

// Crude but valid bound on kappa^beta over the whole line.
double thermal_sup(const ThermalSpectralDensity& tsd) {
  const double k = bare_density_sup(tsd.base, 0.0);
  if (tsd.zero_temperature()) return k;
  return k + tsd.base.g * tsd.base.g / tsd.beta;
}

// sup of kappa^beta over [from, inf).
double thermal_sup_above(const ThermalSpectralDensity& tsd, double from) {
  if (from <= 0.0) return thermal_sup(tsd);
  const double k = bare_density_sup(tsd.base, from);
  if (tsd.zero_temperature()) return k;
  return k * (1.0 + bose_occupation(from, tsd.beta));
}

// sup of kappa^beta over (-inf, -b], b > 0.
double thermal_sup_below(const ThermalSpectralDensity& tsd, double b) {
  if (b <= 0.0) return thermal_sup(tsd);
  if (tsd.zero_temperature()) return 0.0;
  return bare_density_sup(tsd.base, b) * bose_occupation(b, tsd.beta);
}

double zeta_weight(int n) {
  const int m = 2 * n + 1;
  double z;
  if (m <= 15) {
    z = zeta_odd(m);
  } else {
    z = 0.0;
    for (int k = 60; k >= 1; --k) z += std::pow(static_cast<double>(k), -m);
  }
  return (1.0 - std::pow(2.0, -m)) * z;
}

}  // namespace

std::string describe(const ControlStrategy& s) {
  std::ostringstream os;
  std::visit(
      [&os](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Free>) os << "free";
        else if constexpr (std::is_same_v<T, ZenoMeasurement>) os << "zeno(tau=" << v.tau << ")";
        else if constexpr (std::is_same_v<T, BangBangKick>) os << "kick(tau=" << v.tau << ")";
        else os << "continuous(K=" << v.K << ")";
      },
      s);
  return os.str();
}

double golden_rule_rate(const ThermalSpectralDensity& tsd, double omega_m) {
  return 2.0 * kPi * thermal_density(tsd, omega_m);
}

double zeno_rate(const ThermalSpectralDensity& tsd, double omega_m, double tau) {
  check_time(tau, "measurement interval tau");
  auto h = [&](double x) { return thermal_density(tsd, omega_m + x); };
  const double period = 2.0 * kPi / tau;

  // Inner window: every kernel zero is a split point. The window always
  // contains the kink of kappa^beta at omega = 0.
  double cells = std::max(64.0, std::ceil(1.25 * std::abs(omega_m) / period) + 1.0);
  cells = std::min(cells, 1e5);
  const long K = static_cast<long>(cells);
  const double X = K * period;

  QuadratureSpec inner;
  inner.abs_tol = 1e-300;
  inner.rel_tol = 1e-10;
  inner.split_points.reserve(2 * K + 16);
  for (long k = -K + 1; k < K; ++k) inner.split_points.push_back(k * period);
  for (double w : feature_points(tsd)) inner.split_points.push_back(w - omega_m);
  const double a = integrate([&](double x) { return h(x) * sinc2(0.5 * x * tau); }, -X, X, inner).value;

  // Outer tails: sin^2 replaced by its mean 1/2, plus the leading
  // integration-by-parts term of the discarded cos(x tau) part.
  auto u = [&](double x) { return h(x) / (x * x); };
  QuadratureSpec outer;
  outer.abs_tol = std::max(1e-300, 1e-12 * std::abs(a));
  outer.rel_tol = 1e-10;
  for (double w : feature_points(tsd)) outer.split_points.push_back(w - omega_m);
  const double inf = std::numeric_limits<double>::infinity();
  const double tails = integrate(u, X, inf, outer).value + integrate(u, -inf, -X, outer).value;
  const double d = 1e-4 * X;
  auto du = [&](double x) { return (u(x + d) - u(x - d)) / (2.0 * d); };
  const double t2 = tau * tau;
  const double ibp = 2.0 / (t2 * t2) * (du(X) - du(-X));

  const double value = a + 2.0 / t2 * tails + ibp;
  return tau * std::max(value, 0.0);
}

double kick_rate_term(const ThermalSpectralDensity& tsd, double omega_m, double tau, long j) {
  const double jj = j + 0.5;
  const double arg = kPi * (2.0 * j + 1.0) / tau;
  return (2.0 / kPi) / (jj * jj) * (thermal_density(tsd, omega_m + arg) + thermal_density(tsd, omega_m - arg));
}

SeriesRate kick_rate(const ThermalSpectralDensity& tsd, double omega_m, double tau, long j_max) {
  check_time(tau, "kick interval tau");
  if (j_max < 1) throw Error(ErrorCode::DomainError, "j_max must be >= 1");
  double partial = 0.0;
  for (long j = j_max; j >= 0; --j) partial += kick_rate_term(tsd, omega_m, tau, j);

  // Continuous-index tail, sum_{j > J} f(j) ~ integral_{J+1/2}^inf f(s) ds.
  auto f = [&](double s) {
    const double ss = s + 0.5;
    const double arg = kPi * (2.0 * s + 1.0) / tau;
    return (2.0 / kPi) / (ss * ss) * (thermal_density(tsd, omega_m + arg) + thermal_density(tsd, omega_m - arg));
  };
  QuadratureSpec spec;
  spec.abs_tol = std::max(1e-300, 1e-13 * std::abs(partial));
  spec.rel_tol = 1e-9;
  for (double w : feature_points(tsd)) {
    // f has features where omega_m +/- arg hits a feature frequency w.
    for (double arg : {w - omega_m, omega_m - w}) {
      if (arg > 0.0) spec.split_points.push_back(0.5 * (arg * tau / kPi - 1.0));
    }
  }
  const double lo = j_max + 0.5;
  const double tail = integrate(f, lo, std::numeric_limits<double>::infinity(), spec).value;

  const double a_min = kPi * (2.0 * (j_max + 1) + 1.0) / tau;
  const double sup = thermal_sup_above(tsd, omega_m + a_min) + thermal_sup_below(tsd, a_min - omega_m);
  const double bound = (2.0 / kPi) * half_integer_inverse_square_tail(j_max) * sup;

  return {partial + tail, bound, partial};
}

double kick_rate_integral(const ThermalSpectralDensity& tsd, double omega_m, double tau, int N) {
  check_time(tau, "kick interval tau");
  if (N < 2 || N % 2 != 0) {
    std::ostringstream os;
    os << "number of kick cycles must be even and >= 2, got " << N;
    throw Error(ErrorCode::OddN, os.str());
  }
  const double t = N * tau;
  const double cell = 2.0 * kPi / t;

  // Resolve the kernel cell by cell while kappa^beta(w) / w is above 1e-10 of
  // its value at the peak; beyond that the kernel is replaced by its cell
  // average 4 (N - 1/2) / (t x^2).
  const double wp = peak_frequency(tsd.base);
  const double ref = thermal_density(tsd, wp) / wp;
  if (ref == 0.0) return 0.0;
  auto weight = [&](double w) { return thermal_density(tsd, w) / std::abs(w); };
  double w_hi = wp;
  while (weight(w_hi) > 1e-10 * ref && w_hi < 1e12) w_hi *= 1.25;
  double w_lo = 0.0;
  if (!tsd.zero_temperature()) {
    w_lo = -std::min(wp, 1.0 / tsd.beta);
    while (weight(w_lo) > 1e-10 * ref && w_lo > -1e12) w_lo *= 1.25;
  }
  const double x_lo = std::floor((w_lo - omega_m) / cell) * cell;
  const double x_hi = std::ceil((w_hi - omega_m) / cell) * cell;
  const double n_cells = (x_hi - x_lo) / cell;
  if (n_cells > 2e5) {
    std::ostringstream os;
    os << "finite-time kick integral needs " << n_cells << " kernel cells (limit 2e5); reduce N or tau";
    throw Error(ErrorCode::NoConvergence, os.str());
  }

  // sinc^2(x t/2) tan^2(x tau/2) rewritten around the nearest pole of tan:
  // with z = remainder(x tau/2 - pi/2, pi) and N even the product equals
  // 4 cos^2 z sin^2(N z) / (sin^2 z t^2 x^2), a Fejer kernel that stays finite at the poles.
  auto kernel = [&](double x) {
    if (x == 0.0) return 0.0;
    const double z = std::remainder(0.5 * x * tau - 0.5 * kPi, kPi);
    const double c = std::cos(z);
    double r;
    if (std::abs(z) < 1e-7) {
      const double n2 = static_cast<double>(N) * N;
      r = n2 * (1.0 - (n2 - 1.0) * z * z / 3.0);
    } else {
      const double sn = std::sin(N * z) / std::sin(z);
      r = sn * sn;
    }
    return 4.0 * c * c * r / (t * x * x);
  };

  QuadratureSpec spec;
  spec.abs_tol = 1e-300;
  spec.rel_tol = 1e-9;
  const long m0 = std::lround(x_lo / cell), m1 = std::lround(x_hi / cell);
  spec.split_points.reserve(m1 - m0 + 16);
  for (long m = m0 + 1; m < m1; ++m) spec.split_points.push_back(m * cell);
  for (double w : feature_points(tsd)) spec.split_points.push_back(w - omega_m);
  const double core =
      integrate([&](double x) { return thermal_density(tsd, omega_m + x) * kernel(x); }, x_lo, x_hi, spec).value;
  auto averaged = [&](double x) { return 4.0 * (N - 0.5) / t * thermal_density(tsd, omega_m + x) / (x * x); };
  QuadratureSpec tail;
  tail.abs_tol = std::max(1e-300, 1e-12 * core);
  tail.rel_tol = 1e-8;
  const double inf = std::numeric_limits<double>::infinity();
  double rest = integrate(averaged, x_hi, inf, tail).value;
  if (!tsd.zero_temperature()) rest += integrate(averaged, -inf, x_lo, tail).value;
  return core + rest;
}

double kick_rate_increment(const ThermalSpectralDensity& tsd, double omega_m, double tau, int N) {
  const double g0 = N * tau * kick_rate_integral(tsd, omega_m, tau, N);
  const double g1 = (N + 2) * tau * kick_rate_integral(tsd, omega_m, tau, N + 2);
  return (g1 - g0) / (2.0 * tau);
}

double continuous_rate(const ThermalSpectralDensity& tsd, double omega_m, double K) {
  if (!(K >= 0.0) || !std::isfinite(K)) throw Error(ErrorCode::DomainError, "coupling K must be finite and >= 0");
  return kPi * (thermal_density(tsd, omega_m + K) + thermal_density(tsd, omega_m - K));
}

DressedRates dressed_rates(const ThermalSpectralDensity& tsd, double omega, double K) {
  if (!(K >= 0.0) || !std::isfinite(K)) throw Error(ErrorCode::DomainError, "coupling K must be finite and >= 0");
  return {2.0 * kPi * thermal_density(tsd, omega - K), 2.0 * kPi * thermal_density(tsd, omega + K),
          2.0 * kPi * thermal_density(tsd, -omega + K), 2.0 * kPi * thermal_density(tsd, -omega - K)};
}

double dephasing_rate(const ThermalSpectralDensity& tsd0) {
  if (tsd0.zero_temperature()) return 0.0;
  return 2.0 * kPi * thermal_density(tsd0, 0.0);
}

double Asymptotics::kick(double tau) const { return kick_prefactor * bare_density(ff, kPi / tau); }

double Asymptotics::continuous(double K) const { return kPi * bare_density(ff, K); }

Asymptotics summary_asymptotics(const ThermalSpectralDensity& tsd) {
  Asymptotics a;
  a.ff = tsd.base;
  a.zeno_slope = density_integral(tsd);
  a.kick_prefactor = 8.0 / kPi;
  if (tsd.base.family == Family::Polynomial) a.kick_prefactor *= zeta_weight(tsd.base.n);
  return a;
}

RateResult controlled_rate(const RateQuery& q) {
  if (!(q.omega > 0.0)) throw Error(ErrorCode::DomainError, "system frequency Omega must be > 0");
  RateResult r;
  r.gamma_free = golden_rule_rate(q.tsd, q.omega);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Free>) {
          r.gamma = r.gamma_free;
        } else if constexpr (std::is_same_v<T, ZenoMeasurement>) {
          r.gamma = zeno_rate(q.tsd, q.omega, s.tau);
        } else if constexpr (std::is_same_v<T, BangBangKick>) {
          const auto k = kick_rate(q.tsd, q.omega, s.tau);
          r.gamma = k.gamma;
          r.truncation_error = k.truncation_error;
        } else {
          r.gamma = continuous_rate(q.tsd, q.omega, s.K);
        }
      },
      q.strategy);
  r.ratio = r.gamma / r.gamma_free;
  return r;
}

}  // namespace zenolab
