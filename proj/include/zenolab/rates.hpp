#pragma once

#include <functional>
#include <string>
#include <variant>

#include "zenolab/spectral.hpp"

namespace zenolab {

struct Free {};
struct ZenoMeasurement {
  double tau;
};
struct BangBangKick {
  double tau;
};
struct ContinuousCoupling {
  double K;
};

using ControlStrategy = std::variant<Free, ZenoMeasurement, BangBangKick, ContinuousCoupling>;

std::string describe(const ControlStrategy& s);

struct RateQuery {
  ThermalSpectralDensity tsd;
  double omega = 0.01;
  ControlStrategy strategy = Free{};
};

struct RateResult {
  double gamma = 0.0;
  double gamma_free = 0.0;
  double ratio = 0.0;
  double truncation_error = 0.0;
};

// Every rate function takes a signed transition frequency: omega_m > 0 is
// emission, omega_m < 0 the matching absorption channel, 0 pure dephasing.

// 2 pi kappa^beta(omega_m).
double golden_rule_rate(const ThermalSpectralDensity& tsd, double omega_m);

// tau * integral kappa^beta(w) sinc^2((w - omega_m) tau / 2) dw.
double zeno_rate(const ThermalSpectralDensity& tsd, double omega_m, double tau);

struct SeriesRate {
  double gamma = 0.0;
  // Bound on the terms j > j_max from the (j+1/2)^-2 envelope times the sup
  // of kappa^beta over the tail arguments.
  double truncation_error = 0.0;
  double partial_sum = 0.0;
};

// (2/pi) sum_j (j+1/2)^-2 [k(w + pi(2j+1)/tau) + k(w - pi(2j+1)/tau)].
// gamma is the partial sum up to j_max plus an integral estimate of the tail
// (midpoint rule in j), which matters only when tau is long compared to 1/Lambda.
SeriesRate kick_rate(const ThermalSpectralDensity& tsd, double omega_m, double tau, long j_max = 50);

// Single term j of the series above.
double kick_rate_term(const ThermalSpectralDensity& tsd, double omega_m, double tau, long j);

// Finite-time form t * integral kappa^beta sinc^2((w - omega_m) t/2) tan^2((w - omega_m) tau/2) dw
// with t = N tau, N even.
double kick_rate_integral(const ThermalSpectralDensity& tsd, double omega_m, double tau, int N);

// Same kernel, but the rate taken as the secant of the accumulated exponent
// G(N) = t * kick_rate_integral between N and N + 2 cycles. This drops the
// O(1/t) transient carried by the plain form.
double kick_rate_increment(const ThermalSpectralDensity& tsd, double omega_m, double tau, int N);

// pi [kappa^beta(omega_m + K) + kappa^beta(omega_m - K)].
double continuous_rate(const ThermalSpectralDensity& tsd, double omega_m, double K);

struct DressedRates {
  double gamma_plus;       // 2 pi k(Omega - K)
  double gamma_minus;      // 2 pi k(Omega + K)
  double gamma_bar_plus;   // 2 pi k(-Omega + K)
  double gamma_bar_minus;  // 2 pi k(-Omega - K)
};

DressedRates dressed_rates(const ThermalSpectralDensity& tsd, double omega, double K);

// 2 pi kappa0^beta(0) = 2 pi g0^2 / beta; zero at beta = inf.
double dephasing_rate(const ThermalSpectralDensity& tsd0);

// Leading small-tau / large-K behaviour.
struct Asymptotics {
  FormFactor ff;
  double zeno_slope = 0.0;       // 1 / tau_Z^2, thermal
  double kick_prefactor = 0.0;   // 8/pi, times (1 - 2^(-2n-1)) zeta(2n+1) for Polynomial

  double zeno(double tau) const { return zeno_slope * tau; }
  double kick(double tau) const;
  double continuous(double K) const;
};

Asymptotics summary_asymptotics(const ThermalSpectralDensity& tsd);

RateResult controlled_rate(const RateQuery& q);

}  // namespace zenolab
