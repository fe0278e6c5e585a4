#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "zenolab/cli.hpp"
#include "zenolab/error.hpp"

namespace zenolab::cli {

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::DomainError:
    case ErrorCode::DivergentMoment:
    case ErrorCode::OddN:
    case ErrorCode::InvalidState:
    case ErrorCode::InsufficientModes:
      return kExitConfig;
    default:
      return kExitNumerical;
  }
}

struct RawOptions {
  std::string family = "exp";
  std::string beta = "50";
  std::string unit = "W";
  std::string grid;
  std::string scheme = "linear";
};

void add_common(CLI::App* sub, RunConfig& c, RawOptions& raw) {
  sub->add_option("--family", raw.family, "form factor family: exp or poly")
      ->envname("ZENOLAB_FAMILY")
      ->check(CLI::IsMember({"exp", "poly"}));
  sub->add_option("--n", c.n, "polynomial order")->envname("ZENOLAB_N");
  sub->add_option("--g", c.g, "coupling")->envname("ZENOLAB_G");
  sub->add_option("--beta", raw.beta, "inverse temperature, or inf")->envname("ZENOLAB_BETA");
  sub->add_option("--omega", c.omega, "level splitting Omega")->envname("ZENOLAB_OMEGA");
  sub->add_option("--grid", raw.grid, "lo:hi:points[:log|lin]")->envname("ZENOLAB_GRID");
  sub->add_option("--out", c.out, "output CSV path (stdout if omitted)")->envname("ZENOLAB_OUT");
  sub->add_option("--conversion-c", c.conversion_c, "tau = c / K conversion constant")->envname("ZENOLAB_CONVERSION_C");
  sub->add_option("--unit", raw.unit, "W (bandwidth) or lambda (cutoff)")
      ->envname("ZENOLAB_UNIT")
      ->check(CLI::IsMember({"W", "lambda"}));
  sub->add_option("--strategy", c.strategy, "free, zeno, kick or continuous")->envname("ZENOLAB_STRATEGY");
  sub->add_option("--tau", c.tau, "control period(s), comma separated")->delimiter(',')->envname("ZENOLAB_TAU");
  sub->add_option("--K", c.K, "coupling strength(s), comma separated")->delimiter(',')->envname("ZENOLAB_K");
  sub->add_option("--g0", c.g0, "dephasing coupling")->envname("ZENOLAB_G0");
  sub->add_option("--rho0", c.rho0, "up, down, mixed, plus or bloch:x,y,z")->envname("ZENOLAB_RHO0");
  sub->add_option("--protocol", c.protocol, "oracle protocol: free, zeno, kick or continuous")->envname("ZENOLAB_PROTOCOL");
  sub->add_option("--M", c.M, "bath modes")->envname("ZENOLAB_M");
  sub->add_option("--omega-max", c.omega_max, "bath frequency cutoff")->envname("ZENOLAB_OMEGA_MAX");
  sub->add_option("--scheme", raw.scheme, "bath discretization: linear or gl")
      ->envname("ZENOLAB_SCHEME")
      ->check(CLI::IsMember({"linear", "gl"}));
  sub->add_option("--N", c.N, "kick cycles (even)")->envname("ZENOLAB_N_CYCLES");
  sub->add_option("--j-max", c.j_max, "kick series terms summed explicitly")->envname("ZENOLAB_J_MAX");
  sub->add_option("--seed", c.seed, "recorded in the header; runs are deterministic")->envname("ZENOLAB_SEED");
}

void finish(RunConfig& c, const RawOptions& raw) {
  c.family = raw.family == "poly" ? Family::Polynomial : Family::Exponential;
  c.beta = parse_beta(raw.beta);
  c.unit = raw.unit == "lambda" ? Unit::Lambda : Unit::W;
  if (!raw.grid.empty()) c.grid = parse_grid(raw.grid);
  c.scheme = raw.scheme == "gl" ? BathScheme::GaussLegendre : BathScheme::Linear;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"zenolab: decoherence rates under measurement, kick and continuous-coupling control"};
  app.require_subcommand(1);
  RunConfig cfg;
  RawOptions raw;

  using Command = std::function<CsvTable(const RunConfig&)>;
  const std::map<std::string, std::pair<std::string, Command>> commands = {
      {"density", {"bare and thermal spectral densities on a frequency grid", cmd_density}},
      {"sweep", {"controlled/free rate ratio over a tau (or c/K) grid", cmd_sweep}},
      {"crossover", {"crossover scales tau* and K* with closed-form estimates", cmd_crossover}},
      {"evolve", {"qubit Lindblad evolution trace", cmd_evolve}},
      {"oracle", {"exact discretized-bath rates against the analytic ones", cmd_oracle}},
      {"figure", {"data behind one of the reference figures (--id 2..11)", cmd_figure}},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    add_common(sub, cfg, raw);
    if (name == "figure") sub->add_option("--id", cfg.figure_id, "figure id, 2..11")->required();
    subs[name] = sub;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  std::string chosen;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) chosen = name;

  try {
    finish(cfg, raw);
    const CsvTable table = commands.at(chosen).second(cfg);
    std::ostringstream buf;
    table.write(buf);
    if (cfg.out.empty()) {
      out << buf.str();
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) {
        err << "error: cannot open " << cfg.out << " for writing\n";
        return kExitConfig;
      }
      f << buf.str();
      if (!f) {
        err << "error: failed writing " << cfg.out << '\n';
        return kExitConfig;
      }
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace zenolab::cli
