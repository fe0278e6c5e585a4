#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "zenolab/error.hpp"
#include "zenolab/numerics.hpp"

using namespace zenolab;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::DomainError;
}
}  // namespace

TEST_CASE("integrate: normalized densities on the half line and the real line") {
  auto r = integrate([](double w) { return w * std::exp(-w); }, 0.0, INFINITY);
  CHECK(r.value == Approx(1.0).epsilon(1e-10));
  auto gauss = integrate_line([](double x) { return std::exp(-x * x / 2) / std::sqrt(2 * pi); });
  CHECK(gauss.value == Approx(1.0).epsilon(1e-10));
  auto left = integrate([](double x) { return std::exp(x); }, -INFINITY, 0.0);
  CHECK(left.value == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("integrate: sinc^2 filter of a smooth density") {
  // For large tau, tau * int kappa(w) sinc^2((w - W) tau / 2) dw -> 2 pi kappa(W).
  const double beta = 50.0, L = 0.5, W = 0.01, tau = 50.0;
  auto kappa = [&](double w) {
    if (w == 0.0) return 1.0 / beta;
    const double k = std::abs(w) * std::exp(-std::abs(w) / L);
    return w > 0 ? k / -std::expm1(-beta * w) : k / std::expm1(beta * -w);
  };
  auto sinc2 = [](double x) { return x == 0.0 ? 1.0 : std::pow(std::sin(x) / x, 2); };
  QuadratureSpec spec;
  spec.split_points.push_back(0.0);
  for (int k = -400; k <= 400; ++k) spec.split_points.push_back(W + 2 * pi * k / tau);
  auto r = integrate_line([&](double w) { return kappa(w) * sinc2((w - W) * tau / 2); }, spec);
  CHECK(tau * r.value == Approx(2 * pi * kappa(W)).epsilon(0.15));
}

TEST_CASE("integrate: reported error bounds the true error on randomized integrands") {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  std::uniform_real_distribution<double> shift(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = u(rng), b = u(rng), c = u(rng), d = shift(rng), e = u(rng);
    QuadratureSpec spec;
    spec.rel_tol = 1e-6;
    spec.abs_tol = 1e-300;
    double value = 0.0, exact = 0.0, error = 0.0;
    switch (trial % 4) {
      case 0: {  // Gaussian plus Lorentzian on the real line
        auto r = integrate_line([&](double x) { return a * std::exp(-b * x * x) + c / (1 + (x - d) * (x - d)); }, spec);
        value = r.value, error = r.error;
        exact = a * std::sqrt(pi / b) + c * pi;
        break;
      }
      case 1: {  // x^k e^{-b x} on the half line
        const int k = 1 + trial % 5;
        auto r = integrate([&](double x) { return std::pow(x, k) * std::exp(-b * x); }, 0.0, INFINITY, spec);
        value = r.value, error = r.error;
        exact = std::tgamma(k + 1.0) / std::pow(b, k + 1);
        break;
      }
      case 2: {  // oscillatory on a finite interval
        auto r = integrate([&](double x) { return std::cos(e * 10 * x + d); }, 0.0, a, spec);
        value = r.value, error = r.error;
        exact = (std::sin(e * 10 * a + d) - std::sin(d)) / (e * 10);
        break;
      }
      default: {  // integrable endpoint singularity
        auto r = integrate([&](double x) { return c / std::sqrt(x); }, 0.0, a, spec);
        value = r.value, error = r.error;
        exact = 2 * c * std::sqrt(a);
        break;
      }
    }
    INFO("trial " << trial << " value " << value << " exact " << exact << " error " << error);
    CHECK(std::abs(value - exact) <= 3.0 * error + 4 * 1e-16 * std::abs(exact));
    CHECK(std::abs(value - exact) <= 1e-6 * std::abs(exact));
  }
}

TEST_CASE("integrate: non-integrable input raises NoConvergence") {
  QuadratureSpec spec;
  spec.max_subdivisions = 2000;
  CHECK(code_of([&] { integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, spec); }) == ErrorCode::NoConvergence);
}

TEST_CASE("lambert_w_m1: reference values and residuals") {
  CHECK(lambert_w_m1(-1.0 / std::exp(1.0)) == Approx(-1.0).epsilon(1e-7));
  CHECK(lambert_w_m1(-0.1) == Approx(-3.577152063957297).epsilon(1e-12));
  CHECK(lambert_w_m1(-0.1) == Approx(oracle::lambert_wm1(-0.1)).epsilon(1e-13));
  const double w = lambert_w_m1(-1e-300);
  CHECK(w * std::exp(w) == Approx(-1e-300).epsilon(1e-12));

  double worst = 0.0, worst_oracle = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = -std::pow(10.0, -300.0 * i / 999.0) / std::exp(1.0) * (1.0 - 1e-14);
    const double v = lambert_w_m1(x);
    worst = std::max(worst, std::abs((v * std::exp(v) - x) / x));
    worst_oracle = std::max(worst_oracle, std::abs(v - oracle::lambert_wm1(x)) / std::abs(v));
    CHECK(v <= -1.0);
  }
  CHECK(worst <= 1e-12);
  CHECK(worst_oracle <= 1e-9);
}

TEST_CASE("lambert_w_m1: outside the branch domain") {
  CHECK(code_of([] { lambert_w_m1(0.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { lambert_w_m1(0.1); }) == ErrorCode::DomainError);
  CHECK(code_of([] { lambert_w_m1(-0.5); }) == ErrorCode::DomainError);
  CHECK(code_of([] { lambert_w_m1(NAN); }) == ErrorCode::DomainError);
}

TEST_CASE("zeta_odd against direct summation and Boost") {
  CHECK(zeta_odd(3) == Approx(1.2020569031595942).epsilon(1e-12));
  CHECK(zeta_odd(5) == Approx(1.0369277551433699).epsilon(1e-12));
  for (int m = 3; m <= 15; m += 2) {
    CHECK(zeta_odd(m) == Approx(oracle::zeta_direct(m)).epsilon(1e-12));
    CHECK(zeta_odd(m) == Approx(oracle::zeta(m)).epsilon(1e-14));
  }
  CHECK(code_of([] { zeta_odd(2); }) == ErrorCode::DomainError);
  CHECK(code_of([] { zeta_odd(1); }) == ErrorCode::DomainError);
  CHECK(code_of([] { zeta_odd(17); }) == ErrorCode::DomainError);
}

TEST_CASE("half-integer inverse-square series sums to pi^2 / 2") {
  double s = 0.0;
  for (long j = 50; j >= 0; --j) s += 1.0 / ((j + 0.5) * (j + 0.5));
  CHECK(s + half_integer_inverse_square_tail(50) == Approx(pi * pi / 2).epsilon(1e-13));
  for (double x : {0.5, 1.0, 1.5, 7.25, 19.9, 20.1, 300.0, 1e6})
    CHECK(trigamma(x) == Approx(oracle::trigamma(x)).epsilon(1e-13));
}

TEST_CASE("bose_occupation") {
  CHECK(bose_occupation(std::log(2.0), 1.0) == Approx(1.0).epsilon(1e-14));
  CHECK(bose_occupation(1.0, INFINITY) == 0.0);
  CHECK(bose_occupation(-1.0, INFINITY) == -1.0);
  for (double x : {-30.0, -2.0, -1e-3, -1e-5, -1e-9, 1e-9, 1e-5, 1e-4, 2e-4, 0.7, 40.0}) {
    const double n = bose_occupation(x, 1.0);
    CHECK(n + bose_occupation(-x, 1.0) == Approx(-1.0).epsilon(1e-12));
    CHECK(n == Approx(1.0 / std::expm1(x)).epsilon(1e-12));
  }
  // The small-argument branch joins the direct formula without a jump.
  CHECK(bose_occupation(0.99999e-4, 1.0) == Approx(1.0 / std::expm1(0.99999e-4)).epsilon(1e-13));
  CHECK(bose_occupation(1.00001e-4, 1.0) == Approx(1.0 / std::expm1(1.00001e-4)).epsilon(1e-13));
  CHECK(code_of([] { bose_occupation(0.0, 1.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { bose_occupation(1.0, -1.0); }) == ErrorCode::DomainError);
}

TEST_CASE("alpha_n") {
  CHECK(alpha_n(2) == Approx(pi / 2).epsilon(1e-14));
  CHECK(alpha_n(3) == Approx(pi / 4).epsilon(1e-14));
  for (int n = 2; n < 12; ++n) {
    CHECK(alpha_n(n + 1) < alpha_n(n));
    CHECK(alpha_n(n) == Approx(oracle::poly_first_moment(n, 1, 1) / oracle::poly_integral(n, 1, 1)).epsilon(1e-13));
  }
  CHECK(code_of([] { alpha_n(1); }) == ErrorCode::DomainError);
}

TEST_CASE("grids") {
  auto g = log_grid(1e-3, 1e4, 8);
  REQUIRE(g.size() == 8);
  CHECK(g.front() == 1e-3);
  CHECK(g.back() == 1e4);
  CHECK(g[1] == Approx(1e-2));
  auto l = lin_grid(-1, 1, 5);
  CHECK(l[2] == Approx(0.0));
}
