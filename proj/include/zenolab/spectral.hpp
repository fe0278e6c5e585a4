#pragma once

#include <limits>
#include <string>
#include <utility>

namespace zenolab {

enum class Family { Exponential, Polynomial };

std::string to_string(Family f);

// Bare Ohmic form factor kappa(omega), zero on the negative axis.
//   Exponential:   g^2 w exp(-w / cutoff)
//   Polynomial(n): g^2 w / (1 + (w / cutoff)^2)^n
struct FormFactor {
  Family family = Family::Exponential;
  int n = 2;  // only meaningful for Polynomial
  double g = 1.0;
  double cutoff = 0.5;

  double operator()(double omega) const;

  static FormFactor exponential(double g, double cutoff);
  static FormFactor polynomial(int n, double g, double cutoff);
  // Same family and coupling, cutoff chosen so that bandwidth() == W.
  static FormFactor for_bandwidth(Family family, int n, double g, double W);

  FormFactor with_cutoff(double cutoff) const;
  FormFactor with_coupling(double g) const;
};

constexpr double kZeroTemperature = std::numeric_limits<double>::infinity();

// kappa dressed at inverse temperature beta (beta = +inf means T = 0).
struct ThermalSpectralDensity {
  FormFactor base;
  double beta = kZeroTemperature;

  double operator()(double omega) const;
  bool zero_temperature() const { return beta == kZeroTemperature; }
};

double bare_density(const FormFactor& ff, double omega);
double thermal_density(const ThermalSpectralDensity& tsd, double omega);

// First moment of |omega| over the bare density, normalized by its integral.
// Throws DivergentMoment for Polynomial with n < 2.
double bandwidth(const FormFactor& ff);

// Integral of kappa^beta over the real line, i.e. tau_Z^-2.
double density_integral(const ThermalSpectralDensity& tsd);
double zeno_time(const ThermalSpectralDensity& tsd);

// Largest value of the bare density on [from, inf).
double bare_density_sup(const FormFactor& ff, double from = 0.0);

// Frequency of the bare density peak.
double peak_frequency(const FormFactor& ff);

struct FamilySpec {
  Family family = Family::Exponential;
  int n = 2;
};

// Cutoffs (Lambda_a, Lambda_b) giving both families bandwidth W.
std::pair<double, double> match_cutoffs(FamilySpec a, FamilySpec b, double W);

}  // namespace zenolab
