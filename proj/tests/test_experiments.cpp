#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "qkt/config.hpp"
#include "qkt/error.hpp"
#include "qkt/experiments.hpp"
#include "qkt/table.hpp"

using namespace qkt;
using std::numbers::pi;

namespace {

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "qkt_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

Table round_trip(const Table& t) {
  std::istringstream is(t.to_csv());
  return Table::read(is, t.columns());
}

int peaks_above_half_max(const Table& spectrum) {
  double top = 0.0;
  for (std::size_t i = 0; i < spectrum.size(); ++i) top = std::max(top, spectrum.real(i, "magnitude"));
  int count = 0;
  const std::size_t n = spectrum.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double m = spectrum.real(i, "magnitude");
    if (m > 0.5 * top && m > spectrum.real((i + n - 1) % n, "magnitude") && m >= spectrum.real((i + 1) % n, "magnitude"))
      ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("keys, comments and grid syntax") {
    const ExperimentConfig c = parse_config(
        "# demo\n"
        "qubits = 12\n"
        "k_min = 0.5   # trailing comment\n"
        "k_max=2\n"
        "k_step = 0.25\n"
        "\n"
        "kicks = 40\n"
        "scan_axis = phi\n"
        "grid = 30x40\n"
        "average = true\n"
        "workers = 3\n"
        "out = result.csv\n");
    CHECK(c.n_qubits == 12);
    CHECK(c.k_min == 0.5);
    CHECK(c.k_max == 2.0);
    CHECK(c.k_step == 0.25);
    CHECK(c.n_kicks == 40);
    CHECK(c.scan_axis == ScanAxis::Phi);
    CHECK(c.grid_theta == 30);
    CHECK(c.grid_phi == 40);
    CHECK(c.average);
    CHECK(c.workers == 3);
    CHECK(c.out == "result.csv");
  }
  SUBCASE("single k sets both ends") {
    const ExperimentConfig c = parse_config("k = 2.2\n");
    CHECK(c.k_min == 2.2);
    CHECK(c.k_max == 2.2);
  }
  SUBCASE("base values survive") {
    ExperimentConfig base;
    base.n_qubits = 7;
    CHECK(parse_config("kicks = 3\n", base).n_qubits == 7);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parse_config("qubtis = 4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("qubits 4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("qubits = four\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("qubits = 4.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("grid = 30\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("scan_axis = r\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("average = maybe\n"), ConfigError);
    CHECK_THROWS_AS(load_config(scratch_dir() / "does_not_exist.conf"), IoError);
  }
  SUBCASE("validation") {
    ExperimentConfig c;
    c.n_qubits = 1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.k_min = 3;
    c.k_max = 2;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.k_step = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.n_kicks = -1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    CHECK_NOTHROW(ExperimentConfig{}.validate());
  }
  SUBCASE("every key is documented") {
    ExperimentConfig c;
    for (const auto& key : config_keys()) {
      CHECK_FALSE(key.help.empty());
      if (key.name != "out") CHECK_THROWS_AS(c.set(key.name, "not a value @"), ConfigError);
    }
  }
}

TEST_CASE("tables") {
  Table t({{"k", ColumnKind::Real}, {"pole", ColumnKind::Text}, {"n", ColumnKind::Integer}});
  t.add_row({0.1, std::string("south"), 3LL});
  t.add_row({1.0 / 3.0, std::string("north"), -4LL});
  t.add_row({6.02214076e23, std::string("south"), 0LL});
  CHECK(t.to_csv().substr(0, 9) == "k,pole,n\n");
  CHECK(round_trip(t) == t);
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(t.real(1, "k") == 1.0 / 3.0);
  CHECK(t.text(1, "pole") == "north");
  CHECK(t.integer(1, "n") == -4);
  CHECK_THROWS_AS(t.add_row({1.0, 2.0, 3LL}), InvalidArgument);
  CHECK_THROWS_AS(t.add_row({1.0}), InvalidArgument);

  const auto path = scratch_dir() / "table.csv";
  write_table(t, path);
  CHECK(read_table(path, t.columns()) == t);

  std::istringstream wrong_header("k,pole,m\n");
  CHECK_THROWS(Table::read(wrong_header, t.columns()));
  std::istringstream bad_number("k,pole,n\n0.5x,south,1\n");
  CHECK_THROWS(Table::read(bad_number, t.columns()));
  CHECK_THROWS_AS(write_table(t, scratch_dir() / "missing" / "dir" / "t.csv"), IoError);
  CHECK(spectrum_path("out/husimi.csv") == std::filesystem::path("out/husimi_spectrum.csv"));
}

TEST_CASE("bifurcation runner") {
  ExperimentConfig c;
  c.k_min = c.k_max = 1.0;
  const Table single = run_bifurcation(c);
  CHECK(single.size() == static_cast<std::size_t>(c.record));
  CHECK(round_trip(single) == single);

  c.k_min = 0.0;
  c.k_max = 3.0;
  c.k_step = 0.05;
  c.record = 20;
  const Table one = run_bifurcation(c);
  c.workers = 8;
  CHECK(run_bifurcation(c).to_csv() == one.to_csv());
}

TEST_CASE("scar-scan runner") {
  ExperimentConfig c;
  c.n_qubits = 12;
  c.k_min = 0.0;
  c.k_max = 3.0;
  c.k_step = 0.5;
  const Table one = run_scar_scan(c);
  REQUIRE(one.size() == 7u);
  CHECK(round_trip(one) == one);
  CHECK(one.real(0, "k") == 0.0);
  CHECK(one.real(0, "husimi_overlap") > 0.5);
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one.real(i, "Q") >= 0.0);
    CHECK(one.real(i, "negativity") >= 0.0);
    CHECK(one.real(i, "eof") >= 0.0);
    CHECK(one.integer(i, "state_index") >= 0);
    CHECK(one.integer(i, "state_index") < 13);
  }
  c.workers = 4;
  CHECK(run_scar_scan(c).to_csv() == one.to_csv());
}

TEST_CASE("kick-evolution runner") {
  ExperimentConfig c;
  c.n_qubits = 6;
  c.k_min = 0.0;
  c.k_max = 3.0;
  c.k_step = 1.0;
  c.n_kicks = 0;
  const Table none = run_kick_evolution(c);
  REQUIRE(none.size() == 8u);
  for (std::size_t i = 0; i < none.size(); ++i) {
    CHECK(none.real(i, "Q") < 1e-12);
    CHECK(none.text(i, "pole") == (i % 2 == 0 ? "south" : "north"));
  }
  c.n_kicks = 50;
  const Table kicked = run_kick_evolution(c);
  CHECK(round_trip(kicked) == kicked);
  CHECK(kicked.real(2, "Q") > 1e-3);
  c.workers = 3;
  CHECK(run_kick_evolution(c).to_csv() == kicked.to_csv());
  c.average = true;
  const Table averaged = run_kick_evolution(c);
  CHECK(averaged.size() == kicked.size());
  CHECK(averaged.to_csv() != kicked.to_csv());
}

TEST_CASE("branch-scan runner") {
  ExperimentConfig c;
  c.n_qubits = 6;
  c.k_min = c.k_max = 2.2;
  c.n_kicks = 20;
  c.scan_axis = ScanAxis::Phi;
  c.theta = 1.9;
  c.scan_points = 37;
  const Table t = run_branch_scan(c);
  REQUIRE(t.size() == 37u);
  CHECK(t.real(0, "phi") == doctest::Approx(-pi));
  CHECK(t.real(36, "phi") == doctest::Approx(pi));
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(t.real(i, "theta") == 1.9);
  CHECK(round_trip(t) == t);
  c.workers = 5;
  CHECK(run_branch_scan(c).to_csv() == t.to_csv());

  c.scan_axis = ScanAxis::Theta;
  c.scan_min = 0.5;
  c.scan_max = 1.0;
  c.scan_points = 6;
  const auto grid = scan_grid(c);
  REQUIRE(grid.size() == 6u);
  CHECK(grid.front() == 0.5);
  CHECK(grid.back() == 1.0);
  c.scan_max = 4.0;
  CHECK_THROWS_AS(run_branch_scan(c), InvalidArgument);
}

TEST_CASE("husimi runner") {
  ExperimentConfig c;
  c.n_qubits = 20;
  c.grid_theta = 40;
  c.grid_phi = 80;
  c.k_min = c.k_max = 0.5;
  const HusimiTables weak = run_husimi(c);
  REQUIRE(weak.husimi.size() == 40u * 80u);
  CHECK(round_trip(weak.husimi) == weak.husimi);
  CHECK(round_trip(weak.spectrum) == weak.spectrum);
  std::size_t top = 0;
  for (std::size_t i = 0; i < weak.husimi.size(); ++i)
    if (weak.husimi.real(i, "value") > weak.husimi.real(top, "value")) top = i;
  CHECK(std::abs(weak.husimi.real(top, "theta") - pi / 2) <= pi / 40);
  CHECK(std::abs(weak.husimi.real(top, "phi") + pi / 2) <= 2 * pi / 80);
  for (std::size_t i = 1; i < weak.spectrum.size(); ++i)
    CHECK(weak.spectrum.real(i, "omega") > weak.spectrum.real(i - 1, "omega"));

  c.k_min = c.k_max = 6.8;
  const HusimiTables strong = run_husimi(c);
  CHECK(peaks_above_half_max(strong.spectrum) > peaks_above_half_max(weak.spectrum));

  c.k_max = 7.0;
  CHECK_THROWS_AS(run_husimi(c), ConfigError);
}

TEST_CASE("portrait runner") {
  ExperimentConfig c;
  c.k_min = c.k_max = 2.0;
  c.seeds = 40;
  c.iterates = 500;
  const Table t = run_portrait(c);
  REQUIRE(t.size() == 40u * 501u);
  CHECK(round_trip(t) == t);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double th = t.real(i, "theta");
    CHECK(th >= 0.0);
    CHECK(th <= pi);
  }

  c.seeds = 1;
  c.iterates = 50;
  const Table pole = run_portrait(c);
  for (std::size_t i = 0; i < pole.size(); ++i) {
    CHECK(pole.real(i, "theta") == doctest::Approx(pi / 2).epsilon(1e-12));
    CHECK(pole.real(i, "phi") == doctest::Approx(-pi / 2).epsilon(1e-12));
  }

  c.k_min = c.k_max = 0.0;
  c.seeds = 9;
  c.iterates = 8;
  c.phi = 0.3;
  const Table rot = run_portrait(c);
  for (std::size_t i = 0; i + 4 < rot.size(); ++i) {
    if (rot.integer(i, "traj_id") != rot.integer(i + 4, "traj_id")) continue;
    CHECK(rot.real(i + 4, "theta") == doctest::Approx(rot.real(i, "theta")).epsilon(1e-12));
    CHECK(std::remainder(rot.real(i + 4, "phi") - rot.real(i, "phi"), 2 * pi) == doctest::Approx(0.0).epsilon(1e-9));
  }
}

// The single-shot acceptance runs at N = 10 do not show these features; the
// time-averaged variant does.
TEST_CASE("time-averaged kick evolution peaks near k = 2 at N = 10") {
  ExperimentConfig c;
  c.n_qubits = 10;
  c.k_step = 0.1;
  c.average = true;
  c.workers = 4;
  const Table t = run_kick_evolution(c);
  for (const std::string pole : {"south", "north"}) {
    double at2 = 0.0, base = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t.text(i, "pole") != pole) continue;
      const double k = t.real(i, "k");
      if (std::abs(k - 2.0) < 1e-9) at2 = t.real(i, "eof");
      if (k > 0.1 - 1e-9 && k < 1.5 + 1e-9) {
        base += t.real(i, "eof");
        ++n;
      }
    }
    CAPTURE(pole);
    CHECK(at2 >= 2.0 * base / n);
  }
}

TEST_CASE("time-averaged branch scans have minima at the fixed points at N = 30") {
  struct Case {
    double k;
    ScanAxis axis;
    double fixed;
    double target;
  };
  for (const Case cs : {Case{12.73, ScanAxis::Theta, 0.38, 2.32}, Case{2.2, ScanAxis::Phi, 1.9, 1.2},
                        Case{2.4, ScanAxis::Phi, 2.1, 1.0}}) {
    ExperimentConfig c;
    c.n_qubits = 30;
    c.k_min = c.k_max = cs.k;
    c.scan_axis = cs.axis;
    (cs.axis == ScanAxis::Theta ? c.phi : c.theta) = cs.fixed;
    c.average = true;
    c.workers = 4;
    const Table t = run_branch_scan(c);
    const std::string ax = cs.axis == ScanAxis::Theta ? "theta" : "phi";
    const double spacing = t.real(1, ax) - t.real(0, ax);
    double nearest = 1e9;
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
      const double q = t.real(i, "Q");
      if (q < t.real(i - 1, "Q") && q < t.real(i + 1, "Q") && std::abs(t.real(i, ax) - cs.target) < std::abs(nearest - cs.target))
        nearest = t.real(i, ax);
    }
    CAPTURE(cs.k);
    CAPTURE(nearest);
    // +-0.05 plus half a grid cell of the 181-point scan.
    CHECK(std::abs(nearest - cs.target) <= 0.05 + 0.5 * spacing);
  }
}
