#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zenolab/oracle.hpp"
#include "zenolab/rates.hpp"
#include "zenolab/spectral.hpp"

namespace zenolab::cli {

enum class Unit { W, Lambda };

struct GridSpec {
  double lo = 1e-3;
  double hi = 1e4;
  int points = 400;
  bool log = true;

  std::vector<double> values() const;
  std::string str() const;
};

// lo:hi:points[:log|lin]
GridSpec parse_grid(const std::string& s);
// Accepts "inf" for zero temperature.
double parse_beta(const std::string& s);

// Every setting a command can read. Optional fields fall back to a
// per-command default.
struct RunConfig {
  Family family = Family::Exponential;
  int n = 2;
  std::optional<double> g;
  double beta = 50.0;
  std::optional<double> omega;
  Unit unit = Unit::W;
  std::optional<GridSpec> grid;
  std::string out;
  double conversion_c = 6.283185307179586;
  std::string strategy = "zeno";
  std::vector<double> tau;
  std::vector<double> K;
  double g0 = 0.0;
  std::string rho0 = "up";
  std::string protocol = "free";
  int M = 600;
  double omega_max = 20.0;
  BathScheme scheme = BathScheme::Linear;
  int N = 200;
  long j_max = 50;
  int figure_id = 0;
  unsigned long seed = 0;  // recorded only; every run is deterministic

  void validate() const;
  std::vector<std::string> provenance() const;
};

// Form factor of the given family in the configured unit system: bandwidth 1
// for Unit::W, cutoff 1 for Unit::Lambda.
FormFactor form_factor(const RunConfig& c, Family family, double g);

struct CsvTable {
  std::vector<std::string> comments;  // written as "# ..." lines
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  void write(std::ostream& os) const;
  static CsvTable read(std::istream& is);
  // Column as numbers (throws on a non-numeric cell).
  std::vector<double> numeric_column(const std::string& name) const;
  std::size_t column_index(const std::string& name) const;
};

// 17 significant digits, scientific.
std::string fmt(double v);

CsvTable cmd_density(const RunConfig& c);
CsvTable cmd_sweep(const RunConfig& c);
CsvTable cmd_crossover(const RunConfig& c);
CsvTable cmd_evolve(const RunConfig& c);
CsvTable cmd_oracle(const RunConfig& c);
CsvTable cmd_figure(const RunConfig& c);

// Exit codes.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

// Full command-line entry point; argv[0] excluded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zenolab::cli
