#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "zenolab/cli.hpp"
#include "zenolab/error.hpp"
#include "zenolab/numerics.hpp"

namespace zenolab::cli {

namespace {

constexpr double kPi = std::numbers::pi;

RunConfig section_defaults(const RunConfig& c) {
  RunConfig r = c;
  if (!r.g) r.g = 1.0;
  if (!r.omega) r.omega = 0.01;
  return r;
}

CsvTable thermal_densities(const RunConfig& c) {
  const double g = c.g.value_or(1.0);
  const GridSpec grid = c.grid.value_or(GridSpec{-1.0, 4.0, 501, false});
  const FormFactor e = form_factor(c, Family::Exponential, g);
  const FormFactor p = form_factor(c, Family::Polynomial, g);
  CsvTable t;
  t.comments.push_back("grid=" + grid.str() + " betas=50,2 and zero temperature");
  t.columns = {"omega_over_W", "kappa_exp", "kappa_poly", "kappa_beta50_exp", "kappa_beta50_poly", "kappa_beta2_exp",
               "kappa_beta2_poly"};
  const ThermalSpectralDensity e50{e, 50.0}, p50{p, 50.0}, e2{e, 2.0}, p2{p, 2.0};
  for (double w : grid.values())
    t.add_row({fmt(w), fmt(e(w)), fmt(p(w)), fmt(e50(w)), fmt(p50(w)), fmt(e2(w)), fmt(p2(w))});
  return t;
}

CsvTable sweep_figure(RunConfig c, const std::string& strategy, GridSpec grid) {
  c.strategy = strategy;
  if (!c.grid) c.grid = grid;
  return cmd_sweep(c);
}

// Control response functions laid over the polynomial n = 2 density.
CsvTable overlay(RunConfig c, double tau) {
  c.family = Family::Polynomial;
  c.n = 2;
  const double omega = c.omega.value_or(0.2);
  const double g = c.g.value_or(1.0);
  const double K = c.conversion_c / tau;
  const ThermalSpectralDensity d{form_factor(c, Family::Polynomial, g), c.beta};
  const GridSpec grid = c.grid.value_or(GridSpec{-1.0, 3.0, 1001, false});

  struct Line {
    double w;
    double kick = 0.0;
    double cont = 0.0;
  };
  std::vector<Line> lines;
  for (double w : grid.values()) lines.push_back({w});
  for (long j = 0; j < 100000; ++j) {
    const double a = kPi * (2.0 * j + 1.0) / tau;
    if (omega - a < grid.lo && omega + a > grid.hi) break;
    const double weight = (2.0 / kPi) / ((j + 0.5) * (j + 0.5));
    if (omega + a <= grid.hi) lines.push_back({omega + a, weight, 0.0});
    if (omega - a >= grid.lo) lines.push_back({omega - a, weight, 0.0});
  }
  for (double w : {omega + K, omega - K})
    if (w >= grid.lo && w <= grid.hi) lines.push_back({w, 0.0, kPi});
  std::stable_sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.w < b.w; });

  CsvTable t;
  std::ostringstream os;
  os.precision(17);
  os << "family=polynomial n=2 omega=" << omega << " tau=" << tau << " K=" << K << " grid=" << grid.str();
  t.comments.push_back(os.str());
  t.comments.push_back("kick_weight and continuous_weight are delta-line weights at exactly that frequency");
  t.columns = {"omega_over_W", "kappa_beta", "zeno_response", "zeno_product", "kick_weight", "kick_product",
               "continuous_weight", "continuous_product"};
  for (const auto& l : lines) {
    const double k = d(l.w);
    const double y = 0.5 * (l.w - omega) * tau;
    const double s = y == 0.0 ? 1.0 : std::sin(y) / y;
    const double z = tau * s * s;
    t.add_row({fmt(l.w), fmt(k), fmt(z), fmt(z * k), fmt(l.kick), fmt(l.kick * k), fmt(l.cont), fmt(l.cont * k)});
  }
  return t;
}

CsvTable comparison(const RunConfig& c, GridSpec grid) {
  RunConfig r = c;
  if (!r.grid) r.grid = grid;
  const CsvTable z = sweep_figure(r, "zeno", grid);
  const CsvTable k = sweep_figure(r, "kick", grid);
  const CsvTable q = sweep_figure(r, "continuous", grid);
  CsvTable t;
  t.comments = z.comments;
  t.comments.push_back("x = tau for zeno and kick, conversion_c / K for continuous");
  t.columns = {"x", "zeno_exp", "zeno_poly", "kick_exp", "kick_poly", "continuous_exp", "continuous_poly"};
  for (std::size_t i = 0; i < z.rows.size(); ++i)
    t.add_row({z.rows[i][0], z.rows[i][1], z.rows[i][2], k.rows[i][1], k.rows[i][2], q.rows[i][1], q.rows[i][2]});
  return t;
}

}  // namespace

CsvTable cmd_figure(const RunConfig& cfg) {
  cfg.validate();
  const RunConfig c = section_defaults(cfg);
  const GridSpec full{1e-3, 1e4, 701, true};
  CsvTable t;
  switch (cfg.figure_id) {
    case 2: t = thermal_densities(cfg); break;
    case 3: t = sweep_figure(c, "zeno", full); break;
    case 4: t = sweep_figure(c, "kick", full); break;
    case 5: t = sweep_figure(c, "zeno", GridSpec{0.005, 1.5, 300, false}); break;
    case 6: t = sweep_figure(c, "kick", GridSpec{0.05, 4.0, 400, false}); break;
    case 7: t = sweep_figure(c, "continuous", GridSpec{1e-3, 1e4, 1401, true}); break;
    case 8: t = overlay(cfg, 50.0); break;
    case 9: t = overlay(cfg, 3.0); break;
    case 10: t = comparison(c, full); break;
    case 11: t = comparison(c, GridSpec{0.05, 4.0, 400, false}); break;
    default: {
      std::ostringstream os;
      os << "unknown figure id " << cfg.figure_id << " (valid: 2-11)";
      throw Error(ErrorCode::DomainError, os.str());
    }
  }
  t.comments.insert(t.comments.begin(), "zenolab figure " + std::to_string(cfg.figure_id));
  const auto prov = cfg.provenance();
  t.comments.insert(t.comments.begin() + 1, prov.begin(), prov.end());
  return t;
}

}  // namespace zenolab::cli
