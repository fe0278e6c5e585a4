#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "zenolab/error.hpp"
#include "zenolab/numerics.hpp"
#include "zenolab/rates.hpp"

using namespace zenolab;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;
constexpr double kOmega = 0.01;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::DomainError;
}

ThermalSpectralDensity exp_w(double beta = 50.0, double g = 1.0) {
  return {FormFactor::for_bandwidth(Family::Exponential, 2, g, 1.0), beta};
}
ThermalSpectralDensity poly_w(double beta = 50.0, double g = 1.0, int n = 2) {
  return {FormFactor::for_bandwidth(Family::Polynomial, n, g, 1.0), beta};
}

// Direct evaluation of the thermal exponential density, independent of the library.
double kappa_beta_exp(double w, double L, double beta) {
  if (w == 0.0) return 1.0 / beta;
  const double a = std::abs(w);
  const double k = a * std::exp(-a / L);
  return w > 0 ? k * (1.0 + 1.0 / std::expm1(beta * a)) : k / std::expm1(beta * a);
}
}  // namespace

TEST_CASE("golden rule: closed form and detailed balance") {
  const auto e = exp_w();
  const double expected = 2 * pi * kappa_beta_exp(kOmega, 0.5, 50.0);
  CHECK(golden_rule_rate(e, kOmega) == Approx(expected).epsilon(1e-13));
  CHECK(golden_rule_rate(e, kOmega) == Approx(0.15652477).epsilon(1e-7));
  CHECK(golden_rule_rate(e, kOmega) > 0.0);
  CHECK(std::isfinite(golden_rule_rate(poly_w(), kOmega)));
  for (double w : {0.01, 0.3, 2.0})
    for (const auto& d : {exp_w(2.0), poly_w(2.0)})
      CHECK(golden_rule_rate(d, -w) == Approx(std::exp(-2.0 * w) * golden_rule_rate(d, w)).epsilon(1e-12));
}

TEST_CASE("zeno rate: short-time slope and long-time limit") {
  for (const auto& d : {exp_w(), poly_w()}) {
    const double slope = density_integral(d);
    CHECK(zeno_rate(d, kOmega, 1e-3) / 1e-3 == Approx(slope).epsilon(0.02));
    CHECK(zeno_rate(d, kOmega, 50.0) == Approx(golden_rule_rate(d, kOmega)).epsilon(0.15));
    CHECK(zeno_rate(d, kOmega, 1e4) == Approx(golden_rule_rate(d, kOmega)).epsilon(0.02));
  }
  CHECK(zeno_rate(poly_w(), kOmega, 3.0) > golden_rule_rate(poly_w(), kOmega));
}

TEST_CASE("zeno rate against brute-force Simpson quadrature") {
  // Zero temperature: the integrand is supported on w > 0 and negligible past w = 40.
  const double L = 0.5, W = 0.2;
  ThermalSpectralDensity d{FormFactor::exponential(1.0, L), kZeroTemperature};
  for (double tau : {0.3, 1.0, 4.0}) {
    auto f = [&](double w) {
      const double x = (w - W) * tau / 2;
      const double s = x == 0.0 ? 1.0 : std::sin(x) / x;
      return w * std::exp(-w / L) * s * s;
    };
    const double ref = tau * oracle::simpson(f, 0.0, 40.0, 2000000);
    CHECK(zeno_rate(d, W, tau) == Approx(ref).epsilon(1e-8));
  }
  // Thermal case, kink at w = 0 sits on a panel boundary; tail beyond |w| = 40 is below 1e-30.
  ThermalSpectralDensity t{FormFactor::exponential(1.0, L), 2.0};
  for (double tau : {0.5, 2.0}) {
    auto f = [&](double w) {
      const double x = (w - W) * tau / 2;
      const double s = x == 0.0 ? 1.0 : std::sin(x) / x;
      return kappa_beta_exp(w, L, 2.0) * s * s;
    };
    const double ref = tau * (oracle::simpson(f, -40.0, 0.0, 2000000) + oracle::simpson(f, 0.0, 40.0, 2000000));
    // The sinc^2 tail outside [-40, 40] decays as 1/w^2 times a tail of kappa that is ~e^-80; safe.
    CHECK(zeno_rate(t, W, tau) == Approx(ref).epsilon(1e-8));
  }
}

TEST_CASE("kick series: limits and asymptotics") {
  for (const auto& d : {exp_w(), poly_w()}) {
    const double g0 = golden_rule_rate(d, kOmega);
    CHECK(kick_rate(d, kOmega, 1e4).gamma == Approx(g0).epsilon(5e-3));
    CHECK(kick_rate(d, kOmega, 1e5).gamma == Approx(g0).epsilon(1e-3));
    const auto a = summary_asymptotics(d);
    CHECK(kick_rate(d, kOmega, 0.05).gamma == Approx(a.kick(0.05)).epsilon(0.02));
  }
  // Exponential small-tau envelope is exponentially small in 1/tau.
  const auto e = exp_w();
  CHECK(kick_rate(e, kOmega, 0.05).gamma == Approx(8 / pi * (pi / 0.05) * std::exp(-2 * pi / 0.05)).epsilon(0.02));
  // Polynomial: power law with the odd-zeta weight.
  const auto p = poly_w();
  const double L = p.base.cutoff;
  const double weight = (1 - std::pow(2.0, -5)) * oracle::zeta(5);
  CHECK(kick_rate(p, kOmega, 0.05).gamma == Approx(8 / pi * weight * std::pow(L, 4) * std::pow(pi / 0.05, -3)).epsilon(0.02));
}

TEST_CASE("kick series: Floquet j = 0 term and truncation bound") {
  const auto e = exp_w(kZeroTemperature);
  for (double tau : {0.5, 2.0, 9.0}) {
    const double a = pi / tau;
    CHECK(kick_rate_term(e, kOmega, tau, 0) == Approx(8 / pi * (e(kOmega + a) + e(kOmega - a))).epsilon(1e-15));
    CHECK(kick_rate_term(e, 1e-12, tau, 0) == Approx(8 / (pi * pi) * continuous_rate(e, 1e-12, a)).epsilon(1e-10));
  }
  for (const auto& d : {exp_w(), poly_w()}) {
    for (double tau : {0.3, 3.0, 30.0, 300.0}) {
      const auto s = kick_rate(d, kOmega, tau, 50);
      double far = 0.0;
      for (long j = 200000; j > 50; --j) far += kick_rate_term(d, kOmega, tau, j);
      CHECK(far <= s.truncation_error * (1 + 1e-12));
      CHECK(s.gamma >= s.partial_sum);
      CHECK(std::abs(s.gamma - (s.partial_sum + far)) <= s.truncation_error);
    }
  }
}

TEST_CASE("kick finite-time form") {
  for (const auto& d : {exp_w(), poly_w()}) {
    const double series = kick_rate(d, kOmega, 3.0).gamma;
    CHECK(kick_rate_integral(d, kOmega, 3.0, 200) == Approx(series).epsilon(0.03));
    CHECK(kick_rate_increment(d, kOmega, 3.0, 200) == Approx(series).epsilon(1e-3));
    // Finite-time transient shrinks with N.
    const double e8 = std::abs(kick_rate_integral(d, kOmega, 3.0, 8) - series);
    const double e64 = std::abs(kick_rate_integral(d, kOmega, 3.0, 64) - series);
    const double e512 = std::abs(kick_rate_integral(d, kOmega, 3.0, 512) - series);
    CHECK(e64 < e8);
    CHECK(e512 < e64);
  }
  for (double tau : {2.5, 5.0, 10.0})
    for (const auto& d : {exp_w(), poly_w()}) {
      const auto s = kick_rate(d, kOmega, tau);
      CHECK(kick_rate_integral(d, kOmega, tau, 200) ==
            Approx(s.gamma).epsilon(std::max(0.03, 3 * s.truncation_error / s.gamma)));
    }
  // Long period: the increment form still tracks the series.
  const auto e = exp_w();
  CHECK(kick_rate_increment(e, kOmega, 50.0, 200) == Approx(kick_rate(e, kOmega, 50.0).gamma).epsilon(0.01));
  CHECK(code_of([&] { kick_rate_integral(e, kOmega, 1.0, 3); }) == ErrorCode::OddN);
  CHECK(code_of([&] { kick_rate_integral(e, kOmega, 1.0, 0); }) == ErrorCode::OddN);
}

TEST_CASE("continuous coupling") {
  for (const auto& d : {exp_w(), poly_w()}) {
    CHECK(continuous_rate(d, kOmega, 0.0) == Approx(golden_rule_rate(d, kOmega)).epsilon(1e-15));
    const auto a = summary_asymptotics(d);
    CHECK(continuous_rate(d, kOmega, 20.0) == Approx(a.continuous(20.0)).epsilon(0.02));
  }
  const auto cold = exp_w(kZeroTemperature);
  CHECK(continuous_rate(cold, 0.2, 0.5) == Approx(pi * cold(0.7)).epsilon(1e-15));
}

TEST_CASE("dressed rates") {
  const auto d = exp_w(3.0);
  const double W = 0.4;
  for (double K : {0.0, 0.1, 0.4, 1.3}) {
    const auto r = dressed_rates(d, W, K);
    CHECK(r.gamma_bar_plus == Approx(std::exp(-3.0 * (W - K)) * r.gamma_plus).epsilon(1e-12));
    CHECK(r.gamma_bar_minus == Approx(std::exp(-3.0 * (W + K)) * r.gamma_minus).epsilon(1e-12));
    CHECK(0.5 * (r.gamma_plus + r.gamma_minus) == Approx(continuous_rate(d, W, K)).epsilon(1e-14));
    if (K == 0.0) {
      CHECK(r.gamma_plus == r.gamma_minus);
      CHECK(r.gamma_bar_plus == r.gamma_bar_minus);
    }
  }
}

TEST_CASE("dephasing") {
  ThermalSpectralDensity d0{FormFactor::exponential(1.0, 0.5), 50.0};
  CHECK(dephasing_rate(d0) == Approx(2 * pi / 50).epsilon(1e-14));
  CHECK(dephasing_rate({FormFactor::exponential(0.0, 0.5), 50.0}) == 0.0);
  CHECK(dephasing_rate({FormFactor::exponential(1.0, 0.5), kZeroTemperature}) == 0.0);
}

TEST_CASE("rates are finite and non-negative across a parameter grid") {
  for (double beta : {0.5, 50.0, kZeroTemperature})
    for (const auto& d : {exp_w(beta), poly_w(beta), poly_w(beta, 0.3, 4)})
      for (double W : {-0.3, 0.01, 0.2, 3.0})
        for (double x : {1e-3, 0.1, 1.0, 10.0, 1e3}) {
          const double z = zeno_rate(d, W, x), k = kick_rate(d, W, x).gamma, c = continuous_rate(d, W, x);
          CHECK((std::isfinite(z) && z >= 0.0));
          CHECK((std::isfinite(k) && k >= 0.0));
          CHECK((std::isfinite(c) && c >= 0.0));
        }
}

TEST_CASE("controlled_rate dispatch") {
  const auto d = exp_w();
  auto r = controlled_rate({d, kOmega, ZenoMeasurement{0.7}});
  CHECK(r.gamma == zeno_rate(d, kOmega, 0.7));
  CHECK(r.ratio == Approx(r.gamma / r.gamma_free));
  auto k = controlled_rate({poly_w(), kOmega, BangBangKick{0.7}});
  CHECK(k.truncation_error > 0.0);
  CHECK(controlled_rate({d, kOmega, Free{}}).ratio == 1.0);
  CHECK(controlled_rate({d, kOmega, ContinuousCoupling{0.0}}).ratio == Approx(1.0).epsilon(1e-15));
  CHECK(describe(ZenoMeasurement{0.5}).find("zeno") != std::string::npos);
  CHECK(code_of([&] { controlled_rate({d, 0.0, Free{}}); }) == ErrorCode::DomainError);
  CHECK(code_of([&] { zeno_rate(d, kOmega, 0.0); }) == ErrorCode::DomainError);
  CHECK(code_of([&] { kick_rate(d, kOmega, -1.0); }) == ErrorCode::DomainError);
  CHECK(code_of([&] { continuous_rate(d, kOmega, -1.0); }) == ErrorCode::DomainError);
}
