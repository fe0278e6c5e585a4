#include "zenolab/spectral.hpp"

#include <cmath>
#include <sstream>

#include "zenolab/error.hpp"
#include "zenolab/numerics.hpp"

namespace zenolab {

std::string to_string(Family f) { return f == Family::Exponential ? "exponential" : "polynomial"; }

namespace {

void check_form_factor(const FormFactor& ff) {
  if (!(ff.g >= 0.0) || !std::isfinite(ff.g)) throw Error(ErrorCode::DomainError, "coupling g must be finite and >= 0");
  if (!(ff.cutoff > 0.0) || !std::isfinite(ff.cutoff)) throw Error(ErrorCode::DomainError, "cutoff must be finite and > 0");
  if (ff.family == Family::Polynomial && ff.n < 1) throw Error(ErrorCode::DomainError, "polynomial order n must be >= 1");
}

QuadratureSpec tight_spec(double scale) {
  QuadratureSpec q;
  q.abs_tol = 1e-300;
  q.rel_tol = 1e-12;
  q.split_points = {scale, 10.0 * scale, 100.0 * scale};
  return q;
}

}  // namespace

double FormFactor::operator()(double omega) const { return bare_density(*this, omega); }

FormFactor FormFactor::exponential(double g, double cutoff) {
  FormFactor ff{Family::Exponential, 0, g, cutoff};
  check_form_factor(ff);
  return ff;
}

FormFactor FormFactor::polynomial(int n, double g, double cutoff) {
  FormFactor ff{Family::Polynomial, n, g, cutoff};
  check_form_factor(ff);
  return ff;
}

FormFactor FormFactor::for_bandwidth(Family family, int n, double g, double W) {
  if (!(W > 0.0)) throw Error(ErrorCode::DomainError, "bandwidth must be > 0");
  FormFactor unit = family == Family::Exponential ? exponential(g, 1.0) : polynomial(n, g, 1.0);
  return unit.with_cutoff(W / bandwidth(unit));
}

FormFactor FormFactor::with_cutoff(double c) const {
  FormFactor ff = *this;
  ff.cutoff = c;
  check_form_factor(ff);
  return ff;
}

FormFactor FormFactor::with_coupling(double c) const {
  FormFactor ff = *this;
  ff.g = c;
  check_form_factor(ff);
  return ff;
}

double ThermalSpectralDensity::operator()(double omega) const { return thermal_density(*this, omega); }

double bare_density(const FormFactor& ff, double omega) {
  if (!(omega > 0.0)) return 0.0;
  const double g2 = ff.g * ff.g;
  const double x = omega / ff.cutoff;
  if (ff.family == Family::Exponential) return g2 * omega * std::exp(-x);
  return g2 * omega / std::pow(1.0 + x * x, ff.n);
}

double thermal_density(const ThermalSpectralDensity& tsd, double omega) {
  if (tsd.zero_temperature()) return bare_density(tsd.base, omega);
  const double beta = tsd.beta;
  if (!(beta > 0.0)) throw Error(ErrorCode::DomainError, "inverse temperature must be > 0");
  if (omega == 0.0) return tsd.base.g * tsd.base.g / beta;
  if (omega > 0.0) return bare_density(tsd.base, omega) / -std::expm1(-beta * omega);
  const double a = -omega;
  const double e = std::expm1(beta * a);
  if (std::isinf(e)) return 0.0;
  return bare_density(tsd.base, a) / e;
}

double bandwidth(const FormFactor& ff) {
  check_form_factor(ff);
  if (ff.family == Family::Polynomial && ff.n < 2) {
    std::ostringstream os;
    os << "first moment of the polynomial form factor diverges for n = " << ff.n;
    throw Error(ErrorCode::DivergentMoment, os.str());
  }
  // Coupling cancels in the ratio; use g = 1 so g = 0 is well defined.
  const FormFactor unit = ff.with_coupling(1.0);
  const auto spec = tight_spec(ff.cutoff);
  const double inf = std::numeric_limits<double>::infinity();
  const double m0 = integrate([&](double w) { return unit(w); }, 0.0, inf, spec).value;
  const double m1 = integrate([&](double w) { return w * unit(w); }, 0.0, inf, spec).value;
  return m1 / m0;
}

double density_integral(const ThermalSpectralDensity& tsd) {
  const FormFactor& ff = tsd.base;
  check_form_factor(ff);
  if (ff.family == Family::Polynomial && ff.n < 2) {
    std::ostringstream os;
    os << "integral of the polynomial form factor diverges for n = " << ff.n;
    throw Error(ErrorCode::DivergentIntegral, os.str());
  }
  auto spec = tight_spec(ff.cutoff);
  const double inf = std::numeric_limits<double>::infinity();
  try {
    double total = integrate([&](double w) { return thermal_density(tsd, w); }, 0.0, inf, spec).value;
    if (!tsd.zero_temperature()) {
      QuadratureSpec neg = spec;
      neg.split_points = {-1.0 / tsd.beta, -10.0 / tsd.beta, -ff.cutoff, -10.0 * ff.cutoff};
      total += integrate([&](double w) { return thermal_density(tsd, w); }, -inf, 0.0, neg).value;
    }
    return total;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoConvergence) throw Error(ErrorCode::DivergentIntegral, e.what());
    throw;
  }
}

double zeno_time(const ThermalSpectralDensity& tsd) {
  const double s = density_integral(tsd);
  if (!(s > 0.0)) throw Error(ErrorCode::DivergentIntegral, "spectral density integrates to zero; Zeno time is infinite");
  return 1.0 / std::sqrt(s);
}

double peak_frequency(const FormFactor& ff) {
  if (ff.family == Family::Exponential) return ff.cutoff;
  return ff.cutoff / std::sqrt(2.0 * ff.n - 1.0);
}

double bare_density_sup(const FormFactor& ff, double from) {
  const double p = peak_frequency(ff);
  return bare_density(ff, std::max(from, p));
}

std::pair<double, double> match_cutoffs(FamilySpec a, FamilySpec b, double W) {
  auto cutoff_for = [W](FamilySpec s) {
    const FormFactor unit = s.family == Family::Exponential ? FormFactor::exponential(1.0, 1.0)
                                                             : FormFactor::polynomial(s.n, 1.0, 1.0);
    return W / bandwidth(unit);
  };
  if (!(W > 0.0)) throw Error(ErrorCode::DomainError, "bandwidth must be > 0");
  return {cutoff_for(a), cutoff_for(b)};
}

}  // namespace zenolab
