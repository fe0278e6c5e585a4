#pragma once

#include <string>
#include <utility>
#include <vector>

#include "zenolab/spectral.hpp"

namespace zenolab {

enum class CrossoverMethod { RootFind, ClosedForm };

struct CrossoverReport {
  double star_value = 0.0;
  CrossoverMethod method = CrossoverMethod::RootFind;
  double closed_form_estimate = 0.0;  // NaN when the estimate has no real solution
  double relative_gap = 0.0;          // |root - estimate| / root
  std::pair<double, double> bracket{0.0, 0.0};
  std::vector<double> all_crossings;  // every sign change of ratio - 1 on the scan grid, refined
};

struct ScanSpec {
  double lo = 1e-4;
  double hi = 1e4;
  int points_per_decade = 400;
  double rel_width = 1e-10;  // bisection stops at this relative bracket width
};

// Smallest tau with gamma^Z(tau) crossing gamma from below; estimate gamma tau_Z^2.
CrossoverReport find_tau_star_zeno(const ThermalSpectralDensity& tsd, double omega, const ScanSpec& scan = {});

// Same for the kick series; estimate from Lambert W_-1 (Exponential) or the
// power law (Polynomial). The family is read from tsd.base.
CrossoverReport find_tau_star_kick(const ThermalSpectralDensity& tsd, double omega, const ScanSpec& scan = {});

// Largest K with gamma^c crossing gamma, scanning down from large K (the
// suppressed side). Estimate from W_-1 or the power law.
CrossoverReport find_K_star(const ThermalSpectralDensity& tsd, double omega, const ScanSpec& scan = {});

// Closed-form estimates alone.
double tau_star_zeno_estimate(const ThermalSpectralDensity& tsd, double omega);
double tau_star_kick_estimate(const ThermalSpectralDensity& tsd, double omega);
double K_star_estimate(const ThermalSpectralDensity& tsd, double omega);

// Order-of-magnitude estimates for the Polynomial(n) family in bandwidth units.
struct QuickEstimates {
  double tau_star_zeno;
  double tau_star_kick;
  double K_star;
};

QuickEstimates quick_estimates(int n, double omega, double W = 1.0);

}  // namespace zenolab
