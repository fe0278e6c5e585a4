#include <cmath>
#include <sstream>

#include "zenolab/cli.hpp"
#include "zenolab/error.hpp"
#include "zenolab/numerics.hpp"

namespace zenolab::cli {

namespace {

double to_double(const std::string& s, const char* what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) {
    std::ostringstream os;
    os << "cannot parse " << what << " from '" << s << "'";
    throw Error(ErrorCode::DomainError, os.str());
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  return parts;
}

}  // namespace

std::vector<double> GridSpec::values() const {
  return log ? log_grid(lo, hi, points) : lin_grid(lo, hi, points);
}

std::string GridSpec::str() const {
  std::ostringstream os;
  os.precision(17);
  os << lo << ':' << hi << ':' << points << ':' << (log ? "log" : "lin");
  return os.str();
}

GridSpec parse_grid(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() < 3 || parts.size() > 4)
    throw Error(ErrorCode::DomainError, "grid must look like lo:hi:points[:log|lin], got '" + s + "'");
  GridSpec g;
  g.lo = to_double(parts[0], "grid lower end");
  g.hi = to_double(parts[1], "grid upper end");
  const double p = to_double(parts[2], "grid point count");
  if (p != std::floor(p) || p < 2 || p > 1e7) throw Error(ErrorCode::DomainError, "grid point count must be an integer >= 2");
  g.points = static_cast<int>(p);
  g.log = true;
  if (parts.size() == 4) {
    if (parts[3] == "lin") g.log = false;
    else if (parts[3] != "log") throw Error(ErrorCode::DomainError, "grid spacing must be log or lin");
  }
  if (!(g.lo < g.hi)) throw Error(ErrorCode::DomainError, "grid needs lo < hi");
  if (g.log && !(g.lo > 0.0)) throw Error(ErrorCode::DomainError, "log grid needs lo > 0");
  return g;
}

double parse_beta(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Inf") return kZeroTemperature;
  const double b = to_double(s, "beta");
  if (!(b > 0.0)) throw Error(ErrorCode::DomainError, "beta must be > 0 (or inf)");
  return b;
}

void RunConfig::validate() const {
  if (family == Family::Polynomial && n < 2) throw Error(ErrorCode::DomainError, "polynomial order n must be >= 2");
  if (g && !(*g >= 0.0)) throw Error(ErrorCode::DomainError, "g must be >= 0");
  if (!(beta > 0.0)) throw Error(ErrorCode::DomainError, "beta must be > 0");
  if (omega && !(*omega > 0.0)) throw Error(ErrorCode::DomainError, "omega must be > 0");
  if (!(conversion_c > 0.0) || !std::isfinite(conversion_c)) throw Error(ErrorCode::DomainError, "conversion constant must be > 0");
  for (double t : tau)
    if (!(t > 0.0)) throw Error(ErrorCode::DomainError, "tau values must be > 0");
  for (double k : K)
    if (!(k >= 0.0)) throw Error(ErrorCode::DomainError, "K values must be >= 0");
  if (!(g0 >= 0.0)) throw Error(ErrorCode::DomainError, "g0 must be >= 0");
  if (M < 1) throw Error(ErrorCode::DomainError, "M must be >= 1");
  if (!(omega_max > 0.0)) throw Error(ErrorCode::DomainError, "omega-max must be > 0");
  if (j_max < 1) throw Error(ErrorCode::DomainError, "j-max must be >= 1");
}

std::vector<std::string> RunConfig::provenance() const {
  std::ostringstream os;
  os.precision(17);
  os << "family=" << to_string(family) << " n=" << n;
  if (g) os << " g=" << *g;
  os << " beta=" << beta;
  if (omega) os << " omega=" << *omega;
  os << " unit=" << (unit == Unit::W ? "W" : "lambda") << " conversion_c=" << conversion_c;
  return {os.str()};
}

FormFactor form_factor(const RunConfig& c, Family family, double g) {
  if (c.unit == Unit::Lambda)
    return family == Family::Exponential ? FormFactor::exponential(g, 1.0) : FormFactor::polynomial(c.n, g, 1.0);
  return FormFactor::for_bandwidth(family, c.n, g, 1.0);
}

}  // namespace zenolab::cli
