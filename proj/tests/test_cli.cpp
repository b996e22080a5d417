#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/golden.hpp"
#include "cli/table.hpp"

using namespace atomchain;
using namespace atomchain::cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

double cell_number(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return double(*i);
  throw std::runtime_error("not numeric");
}

void check_same_table(const Table& a, const Table& b) {
  CHECK(a.meta == b.meta);
  CHECK(a.columns == b.columns);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t r = 0; r < a.rows.size(); ++r)
    for (std::size_t c = 0; c < a.columns.size(); ++c) {
      const Cell& x = a.rows[r][c];
      const Cell& y = b.rows[r][c];
      if (std::holds_alternative<std::string>(x) || std::holds_alternative<std::monostate>(x)) {
        CHECK(x == y);
        continue;
      }
      double want = cell_number(x);
      if (auto d = fixed_decimals(a.columns[c])) want = round_half_away(want, *d);
      const double got = cell_number(y);
      if (std::isnan(want))
        CHECK(std::isnan(got));
      else
        CHECK(got == want);
    }
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("atomchain_test_" + name);
}

}  // namespace

TEST_CASE("table round trip: random tables through CSV and JSON") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int trial = 0; trial < 30; ++trial) {
    Table t;
    t.meta = {{"command", "test"}, {"note", "a, b: \"c\""}, {"note", "second"}};
    t.columns = {"C", "j", "value", "value_3dp", "label"};
    for (int r = 0; r < 20; ++r) {
      double v = u(rng);
      if (r == 3) v = std::numeric_limits<double>::infinity();
      if (r == 4) v = 1e-300;
      t.rows.push_back({0.1 * r, std::int64_t(r + 1), v, u(rng) * 1e-3,
                        std::string(r % 2 ? "x,y" : "plain")});
    }
    for (Format f : {Format::csv, Format::json}) {
      std::stringstream ss;
      write_table(t, f, ss);
      const Table back = read_table(ss, f);
      check_same_table(t, back);
      // a second pass is byte-identical
      std::stringstream again;
      write_table(back, f, again);
      std::stringstream first;
      write_table(t, f, first);
      CHECK(again.str() == first.str());
    }
  }
}

TEST_CASE("fixed-decimal columns round half away from zero") {
  CHECK(format_cell(0.8125, "one_T1_3dp") == "0.813");
  CHECK(format_cell(-0.8125, "x_3dp") == "-0.813");
  CHECK(format_cell(0.5, "one_T0_3dp") == "0.500");
  CHECK(format_cell(0.8125, "one_T1") == "0.8125");
  CHECK(format_cell(std::int64_t(629), "j") == "629");
}

TEST_CASE("angle and grid parsing") {
  CHECK(parse_angle("90deg") == doctest::Approx(pi / 2));
  CHECK(parse_angle("0.5rad") == 0.5);
  CHECK_THROWS_AS(parse_angle("90"), std::invalid_argument);
  CHECK_THROWS_AS(parse_angle("ninety deg"), std::invalid_argument);
  const auto g = parse_degree_grid("0:90:1");
  CHECK(g.size() == 91);
  CHECK(g.back() == 90.0);
  CHECK(parse_degree_grid("0,45,90") == std::vector<double>{0.0, 45.0, 90.0});
}

TEST_CASE("amplitude-table reproduces the reference table") {
  RunConfig cfg;
  cfg.couplings.clear();
  for (const auto& r : golden_amplitude_table) cfg.couplings.push_back(r.coupling);
  cfg.check = true;
  const auto out = cmd_amplitude_table(cfg);
  REQUIRE(out.table.rows.size() == 5);
  for (const auto& c : out.checks) {
    INFO(c.name << " expected " << c.expected << " got " << c.actual);
    CHECK(c.passed);
  }
  CHECK(out.checks.size() >= 40);

  std::ostringstream csv;
  write_csv(out.table, csv);
  CHECK(csv.str().find("0.813") != std::string::npos);
}

TEST_CASE("mode-profile command") {
  RunConfig cfg;
  cfg.n_atoms = 101;
  cfg.couplings = {0.0, 0.2};
  const auto out = cmd_mode_profile(cfg, {pi / 2, Polarization::perpendicular});
  CHECK(out.table.rows.size() == 202);
  for (std::size_t r = 0; r < 101; ++r) {
    CHECK(out.table.number(r, "re_fy") == doctest::Approx(1.0));
    CHECK(std::abs(out.table.number(r, "re_fx")) < 1e-15);
  }
  CHECK(out.table.number(201, "z_nm") == -100.0);
}

TEST_CASE("lifetime-profile: free chain and end-vs-middle ordering") {
  RunConfig cfg;
  cfg.n_atoms = 41;
  cfg.couplings = {0.0};
  const auto free = cmd_lifetime_profile(cfg);
  for (std::size_t r = 0; r < 41; ++r) {
    CHECK(free.table.number(r, "lifetime_ratio") == doctest::Approx(1.0));
    CHECK(free.table.number(r, "rate_ratio") == free.table.number(r, "shift_ratio"));
  }

  cfg.n_atoms = 629;
  cfg.couplings = {0.1, 0.5};
  cfg.check = true;
  const auto out = cmd_lifetime_profile(cfg);
  for (const auto& c : out.checks) CHECK(c.passed);
  CHECK(out.table.number(0, "lifetime_ratio") < out.table.number(314, "lifetime_ratio"));
}

TEST_CASE("rotation-curve command") {
  RunConfig cfg;
  RotationCurveArgs args{parse_degree_grid("0:90:1"), std::nullopt};
  cfg.check = true;
  const auto out = cmd_rotation_curve(cfg, args);
  CHECK(out.table.rows.size() == 91);
  for (const auto& c : out.checks) CHECK(c.passed);
  CHECK(out.table.number(0, "gamma_deg") == doctest::Approx(180.0));
  CHECK(out.table.number(90, "gamma_deg") == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(out.table.number(0, "ratio_r") == -2.0);

  args.ratio = 1.0;
  const auto flat = cmd_rotation_curve(cfg, args);
  for (std::size_t r = 0; r < flat.table.rows.size(); ++r)
    CHECK(flat.table.number(r, "gamma_rad") < 1e-7);
}

TEST_CASE("angular-pattern command closes") {
  RunConfig cfg;
  cfg.n_atoms = 201;
  cfg.check = true;
  AngularPatternArgs args;
  args.grid = {8, 16};
  const auto out = cmd_angular_pattern(cfg, args);
  CHECK(out.table.rows.size() == 8 * 16);
  for (const auto& c : out.checks) CHECK(c.passed);
}

TEST_CASE("run_cli: output is deterministic and round-trips through a file") {
  const std::vector<std::string> args = {"--n-atoms", "120", "--coupling", "0.3",
                                         "--format", "json", "lifetime-profile"};
  const Run a = run(args);
  const Run b = run(args);
  CHECK(a.code == exit_ok);
  CHECK(a.out == b.out);

  const auto path = temp_path("out.json");
  auto with_output = args;
  with_output.insert(with_output.begin(), {"--output", path.string()});
  CHECK(run(with_output).code == exit_ok);
  std::ifstream in(path, std::ios::binary);
  std::stringstream file;
  file << in.rdbuf();
  CHECK(file.str() == a.out);
  std::filesystem::remove(path);

  std::istringstream is(a.out);
  const Table t = read_json(is);
  CHECK(t.rows.size() == 120);
}

TEST_CASE("run_cli: parallel and serial coupling sweeps agree") {
  const Run both = run({"--n-atoms", "60", "--coupling", "0.1", "--coupling", "0.4",
                        "amplitude-table"});
  const Run one = run({"--n-atoms", "60", "--coupling", "0.1", "amplitude-table"});
  REQUIRE(both.code == exit_ok);
  std::istringstream a(both.out), b(one.out);
  const Table ta = read_csv(a), tb = read_csv(b);
  REQUIRE(ta.rows.size() == 2);
  CHECK(ta.rows[0] == tb.rows[0]);
}

TEST_CASE("run_cli: exit codes") {
  CHECK(run({"--theta-d", "90", "lifetime-profile"}).code == exit_invalid_config);
  CHECK(run({"--coupling", "-0.1", "lifetime-profile"}).code == exit_invalid_config);
  CHECK(run({"--n-atoms", "0", "lifetime-profile"}).code == exit_invalid_config);
  CHECK(run({"--solver", "cg", "lifetime-profile"}).code == exit_invalid_config);
  CHECK(run({"lifetime-profile", "--bogus"}).code == exit_invalid_config);
  CHECK(run({}).code == exit_invalid_config);

  const Run resonant = run({"--n-atoms", "2", "--wavelength-nm", "1e300", "--coupling", "0.5",
                            "--z-mode", "equation", "lifetime-profile"});
  CHECK(resonant.code == exit_solver_failure);
  CHECK(resonant.err.find("rows: 0") != std::string::npos);

  // A short wavelength breaks the Coulomb-limit reference value.
  const Run off = run({"--wavelength-nm", "20", "--coupling", "0.3", "--check",
                       "lifetime-profile"});
  CHECK(off.code == exit_check_failed);
  CHECK(off.err.find("[FAIL]") != std::string::npos);
}

TEST_CASE("run_cli: config file with flag override") {
  const auto path = temp_path("run.ini");
  {
    std::ofstream f(path);
    f << "n-atoms=50\ncoupling=0.2\nformat=json\n";
  }
  const Run fromfile = run({"--config", path.string(), "amplitude-table"});
  REQUIRE(fromfile.code == exit_ok);
  std::istringstream is(fromfile.out);
  const Table t = read_json(is);
  CHECK(t.rows.size() == 1);
  CHECK(t.number(0, "C") == doctest::Approx(0.2));

  const Run overridden =
      run({"--config", path.string(), "--format", "csv", "--coupling", "0.3", "amplitude-table"});
  REQUIRE(overridden.code == exit_ok);
  std::istringstream cs(overridden.out);
  const Table c = read_csv(cs);
  CHECK(c.number(0, "C") == doctest::Approx(0.3));
  CHECK(c.meta.end() != std::find_if(c.meta.begin(), c.meta.end(), [](const auto& kv) {
          return kv.first == "n_atoms" && kv.second == "50";
        }));
  std::filesystem::remove(path);
}
