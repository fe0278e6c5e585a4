#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "zenolab/cli.hpp"

using namespace zenolab;
using namespace zenolab::cli;
using doctest::Approx;

namespace {
struct Run {
  int code;
  std::string out;
  std::string err;
  CsvTable table() const {
    std::istringstream is(out);
    return CsvTable::read(is);
  }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_crossings(const std::vector<double>& r) {
  std::size_t n = 0;
  for (std::size_t i = 1; i < r.size(); ++i) n += (r[i - 1] - 1.0) * (r[i] - 1.0) < 0.0;
  return n;
}

std::string row_cell(const CsvTable& t, const std::string& quantity, const std::string& family, const std::string& col) {
  const auto qi = t.column_index("quantity"), fi = t.column_index("family"), ci = t.column_index(col);
  for (const auto& r : t.rows)
    if (r[qi] == quantity && r[fi] == family) return r[ci];
  FAIL("row not found: " << quantity << " " << family);
  return {};
}
}  // namespace

TEST_CASE("csv round trip") {
  CsvTable t;
  t.comments = {"hello", "a=1"};
  t.columns = {"x", "y"};
  t.add_row({fmt(0.1), fmt(-2.5e-300)});
  t.add_row({fmt(1.0 / 3.0), fmt(INFINITY)});
  std::ostringstream os;
  t.write(os);
  std::istringstream is(os.str());
  const auto r = CsvTable::read(is);
  CHECK(r.comments == t.comments);
  CHECK(r.columns == t.columns);
  CHECK(r.numeric_column("x")[1] == 1.0 / 3.0);
  CHECK(r.numeric_column("y")[0] == -2.5e-300);
  CHECK(std::isinf(r.numeric_column("y")[1]));
}

TEST_CASE("grid and beta parsing") {
  const auto g = parse_grid("1e-3:1e4:8:log");
  CHECK(g.log);
  CHECK(g.values().size() == 8);
  CHECK_FALSE(parse_grid("0:1:11:lin").log);
  CHECK(parse_grid("0:1:11:lin").values()[5] == Approx(0.5));
  CHECK(std::isinf(parse_beta("inf")));
  CHECK(parse_beta("2.5") == 2.5);
  CHECK(run({"sweep", "--grid", "1:2"}).code == kExitConfig);
  CHECK(run({"sweep", "--beta", "-1"}).code == kExitConfig);
}

TEST_CASE("density command") {
  const auto r = run({"density", "--grid", "-1:1:3:lin", "--g", "2", "--beta", "0.5"});
  REQUIRE(r.code == kExitOk);
  const auto t = r.table();
  CHECK(t.numeric_column("kappa_beta_exp")[1] == Approx(8.0).epsilon(1e-14));
  CHECK(t.numeric_column("kappa_beta_poly")[1] == Approx(8.0).epsilon(1e-14));
  const auto cold = run({"density", "--beta", "inf"}).table();
  CHECK(cold.numeric_column("kappa_exp") == cold.numeric_column("kappa_beta_exp"));
  CHECK(cold.numeric_column("kappa_poly") == cold.numeric_column("kappa_beta_poly"));
}

TEST_CASE("sweep commands") {
  const auto z = run({"sweep", "--strategy", "zeno", "--grid", "1e-3:1e2:200:log"}).table();
  CHECK(count_crossings(z.numeric_column("ratio_exp")) == 1);
  CHECK(count_crossings(z.numeric_column("ratio_poly")) == 1);

  // Continuous sweep in x = c/K; the far end (K -> 0) returns to the free rate.
  const auto c = run({"sweep", "--strategy", "continuous", "--grid", "1e-3:1e6:200:log"}).table();
  CHECK(std::abs(c.numeric_column("ratio_exp").back() - 1.0) <= 1e-6);
  CHECK(std::abs(c.numeric_column("ratio_poly").back() - 1.0) <= 1e-6);
  CHECK(c.numeric_column("ratio_exp").front() < 1e-3);

  CHECK(run({"sweep", "--strategy", "free"}).code == kExitConfig);
}

TEST_CASE("crossover command") {
  const auto r = run({"crossover"});
  REQUIRE(r.code == kExitOk);
  const auto t = r.table();
  for (const char* fam : {"exponential", "polynomial"}) {
    CHECK(row_cell(t, "tau_star_zeno", fam, "status") == "ok");
    CHECK(std::stod(row_cell(t, "tau_star_kick", fam, "star_value")) >
          std::stod(row_cell(t, "tau_star_zeno", fam, "star_value")));
  }
  CHECK(row_cell(t, "tau_star_zeno_quick", "polynomial", "status") == "estimate");

  const auto none = run({"crossover", "--grid", "1e3:1e4:20:log"});
  REQUIRE(none.code == kExitOk);
  const auto tn = none.table();
  CHECK(row_cell(tn, "tau_star_zeno", "exponential", "status") == "NoCrossing");
  CHECK(row_cell(tn, "K_star", "polynomial", "status") == "NoCrossing");
}

TEST_CASE("evolve command") {
  const auto r = run({"evolve", "--strategy", "free", "--grid", "0:2000:5:lin"}).table();
  CHECK(r.numeric_column("p_up")[0] == 1.0);
  const double gibbs = std::exp(-0.5) / (1 + std::exp(-0.5));
  CHECK(r.numeric_column("p_up").back() == Approx(gibbs).epsilon(1e-9));

  const auto d = run({"evolve", "--g", "0", "--g0", "1", "--rho0", "bloch:0.6,0,0.8", "--strategy", "free",
                      "--grid", "0:100:11:lin"})
                     .table();
  for (double p : d.numeric_column("p_up")) CHECK(p == Approx(0.9).epsilon(1e-14));
  CHECK(std::abs(d.numeric_column("bloch_x").back()) < 0.6);

  CHECK(run({"evolve", "--rho0", "sideways"}).code == kExitConfig);
  CHECK(run({"evolve", "--rho0", "bloch:1,1,1"}).code == kExitConfig);
}

TEST_CASE("oracle command") {
  const auto r = run({"oracle", "--protocol", "continuous", "--K", "0", "--M", "300"});
  REQUIRE(r.code == kExitOk);
  const auto t = r.table();
  CHECK(std::abs(t.numeric_column("rel_gap")[0]) <= 0.05);
  CHECK(run({"oracle", "--protocol", "kick", "--N", "201"}).code == kExitConfig);
  CHECK(run({"oracle", "--protocol", "teleport"}).code == kExitConfig);
}

TEST_CASE("figure command") {
  const auto f5 = run({"figure", "--id", "5"});
  REQUIRE(f5.code == kExitOk);
  const auto t5 = f5.table();
  const auto s = run({"sweep", "--strategy", "zeno", "--grid", "0.005:1.5:300:lin"}).table();
  CHECK(t5.numeric_column("ratio_exp") == s.numeric_column("ratio_exp"));
  CHECK(run({"figure", "--id", "12"}).code == kExitConfig);
  CHECK(run({"figure"}).code == kExitConfig);
  const auto f2 = run({"figure", "--id", "2"});
  CHECK(f2.code == kExitOk);
}

TEST_CASE("determinism and file output") {
  const auto a = run({"sweep", "--strategy", "kick", "--grid", "0.1:10:30:log"});
  const auto b = run({"sweep", "--strategy", "kick", "--grid", "0.1:10:30:log"});
  CHECK(a.out == b.out);
  const auto path = (std::filesystem::temp_directory_path() / "zenolab_cli_test.csv").string();
  REQUIRE(run({"sweep", "--strategy", "kick", "--grid", "0.1:10:30:log", "--out", path}).code == kExitOk);
  std::ifstream f(path);
  std::stringstream buf;
  buf << f.rdbuf();
  CHECK(buf.str() == a.out);
  std::filesystem::remove(path);
  CHECK(run({"sweep", "--out", "/nonexistent-dir/x.csv"}).code == kExitConfig);
}

TEST_CASE("environment variables sit below command-line flags") {
  ::setenv("ZENOLAB_G", "2", 1);
  ::setenv("ZENOLAB_BETA", "0.5", 1);
  const auto env = run({"density", "--grid", "0:1:2:lin"});
  CHECK(env.table().numeric_column("kappa_beta_exp")[0] == Approx(8.0));
  const auto flag = run({"density", "--grid", "0:1:2:lin", "--g", "1"});
  CHECK(flag.table().numeric_column("kappa_beta_exp")[0] == Approx(2.0));
  ::unsetenv("ZENOLAB_G");
  ::unsetenv("ZENOLAB_BETA");
  const auto dflt = run({"density", "--grid", "0:1:2:lin"});
  CHECK(dflt.table().numeric_column("kappa_beta_exp")[0] == Approx(1.0 / 50.0));
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == kExitConfig);
  CHECK(run({"bogus"}).code == kExitConfig);
  CHECK(run({"sweep", "--family", "gauss"}).code == kExitConfig);
  CHECK(run({"sweep", "--help"}).code == kExitOk);
  CHECK(run({"density", "--family", "poly", "--n", "1"}).code == kExitConfig);
  CHECK(run({"sweep", "--strategy", "zeno", "--omega", "0"}).code == kExitConfig);
}
