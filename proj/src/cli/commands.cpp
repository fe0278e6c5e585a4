#include <cmath>
#include <numbers>
#include <sstream>

#include "zenolab/cli.hpp"
#include "zenolab/crossover.hpp"
#include "zenolab/error.hpp"
#include "zenolab/lindblad.hpp"
#include "zenolab/oracle.hpp"
#include "zenolab/parallel.hpp"

namespace zenolab::cli {

namespace {

constexpr double kSectionOmega = 0.01;
constexpr double kSectionG = 1.0;
constexpr double kOracleOmega = 0.2;
constexpr double kOracleG = 0.1;

std::vector<std::string> header(const RunConfig& c, const std::string& command, double g, double omega) {
  std::vector<std::string> h = {"zenolab " + command};
  for (auto& p : c.provenance()) h.push_back(p);
  std::ostringstream os;
  os.precision(17);
  os << "in effect: g=" << g << " omega=" << omega;
  h.push_back(os.str());
  return h;
}

ThermalSpectralDensity density_for(const RunConfig& c, Family f, double g) {
  return {form_factor(c, f, g), c.beta};
}

QubitDensityMatrix parse_state(const std::string& s) {
  if (s == "up") return QubitDensityMatrix::up();
  if (s == "down") return QubitDensityMatrix::down();
  if (s == "mixed") return QubitDensityMatrix::maximally_mixed();
  if (s == "plus") return QubitDensityMatrix::from_bloch(1.0, 0.0, 0.0);
  if (s.rfind("bloch:", 0) == 0) {
    std::istringstream is(s.substr(6));
    double v[3];
    char sep;
    if (is >> v[0] >> sep >> v[1] >> sep >> v[2]) return QubitDensityMatrix::from_bloch(v[0], v[1], v[2]);
  }
  throw Error(ErrorCode::DomainError, "initial state must be up, down, mixed, plus or bloch:x,y,z; got '" + s + "'");
}

ControlStrategy strategy_from(const RunConfig& c) {
  const double tau = c.tau.empty() ? 1.0 : c.tau.front();
  const double K = c.K.empty() ? 1.0 : c.K.front();
  if (c.strategy == "free") return Free{};
  if (c.strategy == "zeno") return ZenoMeasurement{tau};
  if (c.strategy == "kick") return BangBangKick{tau};
  if (c.strategy == "continuous") return ContinuousCoupling{K};
  throw Error(ErrorCode::DomainError, "strategy must be free, zeno, kick or continuous; got '" + c.strategy + "'");
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + fmt(v[i]);
  return s;
}

}  // namespace

CsvTable cmd_density(const RunConfig& c) {
  c.validate();
  const double g = c.g.value_or(kSectionG);
  const GridSpec grid = c.grid.value_or(GridSpec{-1.0, 5.0, 601, false});
  const auto e = density_for(c, Family::Exponential, g);
  const auto p = density_for(c, Family::Polynomial, g);
  CsvTable t;
  t.comments = header(c, "density", g, c.omega.value_or(kSectionOmega));
  t.comments.push_back("grid=" + grid.str());
  t.columns = {"omega_over_W", "kappa_exp", "kappa_poly", "kappa_beta_exp", "kappa_beta_poly"};
  for (double w : grid.values())
    t.add_row({fmt(w), fmt(e.base(w)), fmt(p.base(w)), fmt(e(w)), fmt(p(w))});
  return t;
}

CsvTable cmd_sweep(const RunConfig& c) {
  c.validate();
  const double g = c.g.value_or(kSectionG);
  const double omega = c.omega.value_or(kSectionOmega);
  const GridSpec grid = c.grid.value_or(GridSpec{1e-3, 1e4, 400, true});
  if (c.strategy != "zeno" && c.strategy != "kick" && c.strategy != "continuous")
    throw Error(ErrorCode::DomainError, "sweep strategy must be zeno, kick or continuous");
  const auto e = density_for(c, Family::Exponential, g);
  const auto p = density_for(c, Family::Polynomial, g);
  const double ge = golden_rule_rate(e, omega), gp = golden_rule_rate(p, omega);
  const auto xs = grid.values();
  auto rate = [&](const ThermalSpectralDensity& d, double x) {
    if (c.strategy == "zeno") return zeno_rate(d, omega, x);
    if (c.strategy == "kick") return kick_rate(d, omega, x, c.j_max).gamma;
    return continuous_rate(d, omega, c.conversion_c / x);
  };
  const auto ratios = parallel_map(xs, [&](double x) { return std::pair{rate(e, x) / ge, rate(p, x) / gp}; });
  CsvTable t;
  t.comments = header(c, "sweep", g, omega);
  t.comments.push_back("strategy=" + c.strategy + " grid=" + grid.str() +
                       (c.strategy == "continuous" ? " x=conversion_c/K" : " x=tau"));
  t.columns = {"x", "ratio_exp", "ratio_poly"};
  for (std::size_t i = 0; i < xs.size(); ++i) t.add_row({fmt(xs[i]), fmt(ratios[i].first), fmt(ratios[i].second)});
  return t;
}

CsvTable cmd_crossover(const RunConfig& c) {
  c.validate();
  const double g = c.g.value_or(kSectionG);
  const double omega = c.omega.value_or(kSectionOmega);
  ScanSpec scan;
  if (c.grid) {
    if (!c.grid->log || c.grid->lo <= 0.0 || c.grid->points < 1)
      throw Error(ErrorCode::DomainError, "crossover --grid is lo:hi:points_per_decade:log with lo > 0");
    scan.lo = c.grid->lo;
    scan.hi = c.grid->hi;
    scan.points_per_decade = c.grid->points;
  }
  CsvTable t;
  t.comments = header(c, "crossover", g, omega);
  t.comments.push_back("scan=" + fmt(scan.lo) + ":" + fmt(scan.hi) + " points_per_decade=" + std::to_string(scan.points_per_decade));
  t.columns = {"quantity", "family", "status", "star_value", "closed_form_estimate", "relative_gap",
               "bracket_lo", "bracket_hi", "crossings"};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  double poly_roots[3] = {nan, nan, nan};
  for (Family f : {Family::Exponential, Family::Polynomial}) {
    const auto d = density_for(c, f, g);
    struct Job {
      const char* name;
      CrossoverReport (*fn)(const ThermalSpectralDensity&, double, const ScanSpec&);
      double (*estimate)(const ThermalSpectralDensity&, double);
    };
    const Job jobs[3] = {{"tau_star_zeno", find_tau_star_zeno, tau_star_zeno_estimate},
                         {"tau_star_kick", find_tau_star_kick, tau_star_kick_estimate},
                         {"K_star", find_K_star, K_star_estimate}};
    for (int k = 0; k < 3; ++k) {
      const Job& j = jobs[k];
      try {
        const auto r = j.fn(d, omega, scan);
        t.add_row({j.name, to_string(f), "ok", fmt(r.star_value), fmt(r.closed_form_estimate), fmt(r.relative_gap),
                   fmt(r.bracket.first), fmt(r.bracket.second), join(r.all_crossings)});
        std::ostringstream os;
        os.precision(6);
        os << j.name << " (" << to_string(f) << "): root " << r.star_value << ", estimate "
           << r.closed_form_estimate << ", gap " << 100.0 * r.relative_gap << "%";
        t.comments.push_back(os.str());
        if (f == Family::Polynomial) poly_roots[k] = r.star_value;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoCrossing) throw;
        t.add_row({j.name, to_string(f), "NoCrossing", fmt(nan), fmt(j.estimate(d, omega)), fmt(nan), fmt(nan),
                   fmt(nan), ""});
        t.comments.push_back(std::string(j.name) + " (" + to_string(f) + "): no crossing");
      }
    }
  }
  if (c.unit == Unit::W) {
    const auto q = quick_estimates(c.n, omega, 1.0);
    const double quick[3] = {q.tau_star_zeno, q.tau_star_kick, q.K_star};
    const char* names[3] = {"tau_star_zeno_quick", "tau_star_kick_quick", "K_star_quick"};
    for (int k = 0; k < 3; ++k) {
      const double gap = std::isnan(poly_roots[k]) ? nan : std::abs(poly_roots[k] - quick[k]) / poly_roots[k];
      t.add_row({names[k], "polynomial", "estimate", fmt(poly_roots[k]), fmt(quick[k]), fmt(gap), fmt(nan), fmt(nan), ""});
    }
  }
  return t;
}

CsvTable cmd_evolve(const RunConfig& c) {
  c.validate();
  const double g = c.g.value_or(kSectionG);
  const double omega = c.omega.value_or(kSectionOmega);
  const GridSpec grid = c.grid.value_or(GridSpec{0.0, 500.0, 201, false});
  const auto flip = density_for(c, c.family, g);
  ThermalSpectralDensity deph{flip.base.with_coupling(c.g0), c.beta};
  const auto gen = build_qubit_generator(flip, deph, omega, strategy_from(c));
  const auto rho0 = parse_state(c.rho0);
  CsvTable t;
  t.comments = header(c, "evolve", g, omega);
  std::ostringstream os;
  os.precision(17);
  os << "strategy=" << describe(strategy_from(c)) << " rho0=" << c.rho0 << " g0=" << c.g0 << " gamma_emit=" << gen.gamma_emit
     << " gamma_abs=" << gen.gamma_abs << " gamma0=" << gen.gamma0
     << " detailed_balance=" << (gen.detailed_balance ? "true" : "false");
  t.comments.push_back(os.str());
  t.columns = {"t", "p_up", "bloch_x", "bloch_y", "bloch_z", "purity"};
  for (double time : grid.values()) {
    const auto o = observables(evolve(rho0, gen, time));
    t.add_row({fmt(time), fmt(o.p_up), fmt(o.bloch[0]), fmt(o.bloch[1]), fmt(o.bloch[2]), fmt(o.purity)});
  }
  return t;
}

CsvTable cmd_oracle(const RunConfig& c) {
  c.validate();
  const double g = c.g.value_or(kOracleG);
  const double omega = c.omega.value_or(kOracleOmega);
  if (c.protocol == "kick" && (c.N < 2 || c.N % 2 != 0)) {
    throw Error(ErrorCode::OddN, "kick protocol needs an even N >= 2, got " + std::to_string(c.N));
  }
  const FormFactor ff = form_factor(c, c.family, g);
  const ThermalSpectralDensity zero_t{ff, kZeroTemperature};
  const auto bath = build_bath(ff, c.omega_max, c.M, c.scheme);
  CsvTable t;
  t.comments = header(c, "oracle", g, omega);
  std::ostringstream os;
  os.precision(17);
  os << "protocol=" << c.protocol << " g=" << g << " omega=" << omega << " beta=inf (oracle is zero temperature)"
     << " omega_max=" << c.omega_max << " scheme=" << (c.scheme == BathScheme::Linear ? "linear" : "gauss-legendre")
     << " recurrence_time=" << bath.recurrence_time();
  t.comments.push_back(os.str());
  t.comments.push_back("analytic rates are second order in g; expect O(g^2) relative disagreement");
  t.columns = {"param", "rate_oracle", "rate_analytic", "rel_gap", "fit_residual", "M", "window"};
  auto row = [&](double param, double oracle, double analytic, double residual, std::pair<double, double> w) {
    t.add_row({fmt(param), fmt(oracle), fmt(analytic), fmt((oracle - analytic) / analytic), fmt(residual),
               std::to_string(c.M), fmt(w.first) + ":" + fmt(w.second)});
  };
  if (c.protocol == "free") {
    const auto m = SingleExcitationModel::free_model(bath, omega);
    const auto f = fit_survival(m);
    row(0.0, f.rate, golden_rule_rate(zero_t, omega), f.residual, f.fit_window);
  } else if (c.protocol == "zeno") {
    const auto m = SingleExcitationModel::free_model(bath, omega);
    const std::vector<double> taus = c.tau.empty() ? std::vector<double>{0.1, 0.5, 2.0} : c.tau;
    for (double tau : taus) row(tau, zeno_effective_rate(m, tau), zeno_rate(zero_t, omega, tau), 0.0, {0.0, tau});
  } else if (c.protocol == "kick") {
    const auto m = SingleExcitationModel::ancilla_model(bath, omega, 0.0);
    const std::vector<double> taus = c.tau.empty() ? std::vector<double>{0.5} : c.tau;
    for (double tau : taus) {
      const auto f = fit_kick(m, tau, c.N);
      row(tau, f.rate, kick_rate(zero_t, omega, tau, c.j_max).gamma, f.residual, f.fit_window);
    }
  } else if (c.protocol == "continuous") {
    const std::vector<double> Ks = c.K.empty() ? std::vector<double>{0.0, 5.0} : c.K;
    for (double K : Ks) {
      const auto m = SingleExcitationModel::ancilla_model(bath, omega, K);
      const auto f = fit_survival(m, 0.24, 0.8);
      row(K, f.rate, continuous_rate(zero_t, omega, K), f.residual, f.fit_window);
    }
  } else {
    throw Error(ErrorCode::DomainError, "protocol must be free, zeno, kick or continuous; got '" + c.protocol + "'");
  }
  return t;
}

}  // namespace zenolab::cli
