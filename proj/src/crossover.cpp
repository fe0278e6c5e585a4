#include "zenolab/crossover.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "zenolab/error.hpp"
#include "zenolab/numerics.hpp"
#include "zenolab/parallel.hpp"
#include "zenolab/rates.hpp"

namespace zenolab {

namespace {

constexpr double kPi = std::numbers::pi;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_omega(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw Error(ErrorCode::DomainError, "Omega must be finite and > 0");
}

// Bisection on log(x) for ratio(x) - 1, with ratio(lo) and ratio(hi) on
// opposite sides of 1.
std::pair<double, double> refine(const std::function<double(double)>& ratio, double lo, double hi, double rel_width) {
  bool lo_above = ratio(lo) >= 1.0;
  for (int it = 0; it < 200 && (hi - lo) > rel_width * lo; ++it) {
    const double mid = std::sqrt(lo * hi);
    const bool above = ratio(mid) >= 1.0;
    if (above == lo_above) lo = mid;
    else hi = mid;
  }
  return {lo, hi};
}

enum class Side { FromBelowAscending, FromBelowDescending };

CrossoverReport scan(const std::function<double(double)>& ratio, const ScanSpec& s, Side side, double estimate,
                     const char* what) {
  if (!(s.lo > 0.0) || !(s.hi > s.lo) || s.points_per_decade < 1)
    throw Error(ErrorCode::DomainError, "invalid crossover scan range");
  const int points = static_cast<int>(std::ceil(std::log10(s.hi / s.lo) * s.points_per_decade)) + 1;
  const auto grid = log_grid(s.lo, s.hi, points);
  const auto values = parallel_map(grid, ratio);

  CrossoverReport rep;
  rep.method = CrossoverMethod::RootFind;
  rep.closed_form_estimate = estimate;
  std::vector<std::pair<double, double>> brackets;
  long canonical = -1;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const bool a = values[i] >= 1.0, b = values[i + 1] >= 1.0;
    if (a == b) continue;
    brackets.push_back(refine(ratio, grid[i], grid[i + 1], s.rel_width));
    if (side == Side::FromBelowAscending && !a && b && canonical < 0) canonical = static_cast<long>(brackets.size()) - 1;
    if (side == Side::FromBelowDescending && a && !b) canonical = static_cast<long>(brackets.size()) - 1;
  }
  for (const auto& br : brackets) rep.all_crossings.push_back(std::sqrt(br.first * br.second));
  if (canonical < 0) {
    std::ostringstream os;
    os << what << ": ratio does not cross 1 from the controlled side on [" << s.lo << ", " << s.hi << "]";
    if (!brackets.empty()) os << " (" << brackets.size() << " other crossing(s))";
    throw Error(ErrorCode::NoCrossing, os.str());
  }
  rep.bracket = brackets[canonical];
  rep.star_value = rep.all_crossings[canonical];
  rep.relative_gap = std::abs(rep.star_value - estimate) / rep.star_value;
  return rep;
}

double coupling_scale(const ThermalSpectralDensity& tsd) {
  const double g = tsd.base.g;
  if (!(g > 0.0)) throw Error(ErrorCode::DomainError, "crossover estimates need g > 0");
  return g * g * tsd.base.cutoff;
}

}  // namespace

double tau_star_zeno_estimate(const ThermalSpectralDensity& tsd, double omega) {
  check_omega(omega);
  return golden_rule_rate(tsd, omega) / density_integral(tsd);
}

double tau_star_kick_estimate(const ThermalSpectralDensity& tsd, double omega) {
  check_omega(omega);
  const double L = tsd.base.cutoff;
  const double x = golden_rule_rate(tsd, omega) / coupling_scale(tsd);
  if (tsd.base.family == Family::Exponential) {
    const double arg = -kPi / 8.0 * x;
    if (arg < -1.0 / std::numbers::e) return kNaN;
    return -(kPi / L) / lambert_w_m1(arg);
  }
  const double c_n = summary_asymptotics(tsd).kick_prefactor * kPi / 8.0;
  return (kPi / L) * std::pow(kPi / (8.0 * c_n) * x, 1.0 / (2.0 * tsd.base.n - 1.0));
}

double K_star_estimate(const ThermalSpectralDensity& tsd, double omega) {
  check_omega(omega);
  const double L = tsd.base.cutoff;
  const double x = golden_rule_rate(tsd, omega) / (kPi * coupling_scale(tsd));
  if (tsd.base.family == Family::Exponential) {
    if (-x < -1.0 / std::numbers::e) return kNaN;
    return -L * lambert_w_m1(-x);
  }
  return L * std::pow(x, -1.0 / (2.0 * tsd.base.n - 1.0));
}

CrossoverReport find_tau_star_zeno(const ThermalSpectralDensity& tsd, double omega, const ScanSpec& s) {
  check_omega(omega);
  const double gamma = golden_rule_rate(tsd, omega);
  auto ratio = [&](double tau) { return zeno_rate(tsd, omega, tau) / gamma; };
  return scan(ratio, s, Side::FromBelowAscending, tau_star_zeno_estimate(tsd, omega), "Zeno crossover");
}

CrossoverReport find_tau_star_kick(const ThermalSpectralDensity& tsd, double omega, const ScanSpec& s) {
  check_omega(omega);
  const double gamma = golden_rule_rate(tsd, omega);
  auto ratio = [&](double tau) { return kick_rate(tsd, omega, tau).gamma / gamma; };
  return scan(ratio, s, Side::FromBelowAscending, tau_star_kick_estimate(tsd, omega), "kick crossover");
}

CrossoverReport find_K_star(const ThermalSpectralDensity& tsd, double omega, const ScanSpec& s) {
  check_omega(omega);
  const double gamma = golden_rule_rate(tsd, omega);
  auto ratio = [&](double K) { return continuous_rate(tsd, omega, K) / gamma; };
  return scan(ratio, s, Side::FromBelowDescending, K_star_estimate(tsd, omega), "continuous crossover");
}

QuickEstimates quick_estimates(int n, double omega, double W) {
  check_omega(omega);
  if (!(W > 0.0)) throw Error(ErrorCode::DomainError, "bandwidth must be > 0");
  const double a = alpha_n(n);
  const double p = 1.0 / (2.0 * n - 1.0);
  const double w = omega / W;
  QuickEstimates q;
  q.tau_star_zeno = 2.0 * kPi / W * 2.0 * (n - 1) * a * a * w;
  q.tau_star_kick = 2.0 * kPi / W * (a / 2.0) * std::pow(a * kPi * kPi * w / 4.0, p);
  q.K_star = W / a * std::pow(2.0 / (a * w), p);
  return q;
}

}  // namespace zenolab
