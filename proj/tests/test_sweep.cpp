#include "doctest.h"

#include "cmm/emit.hpp"
#include "cmm/presets.hpp"
#include "cmm/sweep.hpp"
#include "test_support.hpp"

using namespace cmm;

namespace {

SweepSpec small_sweep(int count = 31) {
  SweepSpec s;
  s.name = "small";
  s.base = "table1";
  s.params = table1_config().params;
  s.axis = {"delta_c_over_omega_b", -2.0, 1.0, count};
  for (const char* m : {"E_m1m2", "E_m2b", "E_cb", "R_m1cb", "V_c"}) s.outputs.push_back(parse_measure(m));
  return s;
}

std::size_t column(const Table& t, const std::string& name) {
  const auto it = std::find(t.columns.begin(), t.columns.end(), name);
  REQUIRE(it != t.columns.end());
  return static_cast<std::size_t>(it - t.columns.begin());
}

}  // namespace

TEST_CASE("rows follow the axis") {
  const SweepResult r = run_sweep(small_sweep(), 1);
  REQUIRE(r.rows.size() == 31);
  CHECK(r.rows.front().value == -2.0);
  CHECK(r.rows.back().value == 1.0);
  for (const auto& row : r.rows) {
    REQUIRE(row.directions.size() == 1);
    CHECK(row.directions[0].measures.size() == 5);
    CHECK(row.contrast.empty());
  }
}

TEST_CASE("evaluate_point matches the pipeline pieces") {
  const SweepSpec s = small_sweep();
  const PhysicalParams p = point_params(s, std::nullopt, -1.0, 0);
  const PointResult pr = evaluate_point(p, s.outputs);
  REQUIRE(pr.stable);
  REQUIRE(pr.physical);
  CHECK(testing::close(*pr.measures[0], 0.000506202230063075, 1e-6));
  CHECK(*pr.measures[3] >= 0.0);
  CHECK(*pr.raw_contangles[0] <= *pr.measures[3] + 1e-18);
  CHECK(*pr.measures[4] < 0.5);
}

TEST_CASE("all couplings off: nothing is entangled") {
  SweepSpec s = small_sweep(11);
  apply_parameter(s.params, "g1_hz", 0.0);
  apply_parameter(s.params, "g2_hz", 0.0);
  apply_parameter(s.params, "J_hz", 0.0);
  apply_parameter(s.params, "G_direct_hz", 0.0);
  const SweepResult r = run_sweep(s, 2);
  for (const auto& row : r.rows) {
    const auto& d = row.directions[0];
    REQUIRE(d.stable);
    for (std::size_t k = 0; k < 4; ++k) CHECK(*d.measures[k] == 0.0);
  }
}

TEST_CASE("unstable points are NA, never zero") {
  SweepSpec s = small_sweep(5);
  s.axis = {"G_direct_hz", 1e6, 60e6, 5};
  apply_parameter(s.params, "delta_c_over_omega_b", 1.0);
  apply_parameter(s.params, "delta_m1_over_omega_b", 1.0);
  const SweepResult r = run_sweep(s, 1);
  const Table t = to_table(r);
  bool saw_unstable = false;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& d = r.rows[i].directions[0];
    if (!d.stable) {
      saw_unstable = true;
      for (const auto& m : d.measures) CHECK_FALSE(m.has_value());
      CHECK(t.numeric[i][column(t, "stable")] == 0.0);
      CHECK(t.notes[i].find("unstable") != std::string::npos);
    }
  }
  CHECK(saw_unstable);
  CHECK(sweep_csv(r).find(",NA,") != std::string::npos);
}

TEST_CASE("pair mode contrast columns") {
  SweepSpec s = small_sweep(61);
  s.outputs = {parse_measure("E_m1m2"), parse_measure("R_m1cb")};
  apply_parameter(s.params, "delta_b_over_omega_b", -0.2);  // sign is ignored
  s.barnett_pair = true;
  const SweepResult r = run_sweep(s, 3);
  const Table t = to_table(r);
  const auto xe = column(t, "X_E_m1m2");
  const auto pos = column(t, "E_m1m2_pos");
  const auto neg = column(t, "E_m1m2_neg");
  column(t, "X_R_m1cb");
  bool window = false;
  for (const auto& row : t.numeric) {
    if (!row[xe]) continue;
    CHECK(*row[xe] >= 0.0);
    CHECK(*row[xe] <= 1.0);
    if (*row[pos] == 0.0 && *row[neg] == 0.0) CHECK(*row[xe] == 0.0);
    if (*row[pos] > 0.0 && *row[neg] == 0.0) {
      CHECK(*row[xe] == 1.0);
      window = true;
    }
  }
  CHECK(window);
  const auto p = point_params(s, std::nullopt, 0.0, -1);
  CHECK(p.delta_B == doctest::Approx(-0.2 * p.omega_b));
}

TEST_CASE("two-axis sweeps are outer-major") {
  SweepSpec s = small_sweep(4);
  s.outer = OuterAxis{"temperature_k", {0.0, 0.05, 0.1}};
  const SweepResult r = run_sweep(s, 2);
  REQUIRE(r.rows.size() == 12);
  CHECK(*r.rows[0].outer == 0.0);
  CHECK(*r.rows[4].outer == 0.05);
  CHECK(r.rows[5].value == r.rows[1].value);
  const Table t = to_table(r);
  CHECK(t.columns[0] == "temperature_k");
  CHECK(t.columns[1] == "delta_c_over_omega_b");
}

TEST_CASE("results do not depend on the worker count") {
  const SweepSpec s = small_sweep(40);
  const std::string one = sweep_csv(run_sweep(s, 1));
  for (int threads : {2, 3, 8}) CHECK(sweep_csv(run_sweep(s, threads)) == one);
}

TEST_CASE("J sweep: magnon-magnon coupling feeds the m2-phonon entanglement") {
  SweepSpec s = small_sweep(3);
  s.axis = {"J_over_g1", 0.0, 1.0, 3};
  s.outputs = {parse_measure("E_m2b")};
  const SweepResult r = run_sweep(s, 1);
  // References from an independent numpy/scipy pipeline at delta_c = -omega_b.
  const double ref[] = {0.0004947690063392398, 0.0022976613904337035, 0.007223767572360746};
  for (int k = 0; k < 3; ++k) {
    REQUIRE(r.rows[k].directions[0].stable);
    CHECK(testing::close(*r.rows[k].directions[0].measures[0], ref[k], 1e-6));
  }
}

TEST_CASE("invalid specs abort before computing") {
  SweepSpec s = small_sweep();
  s.outputs.clear();
  CHECK_THROWS_AS(run_sweep(s), ConfigError);
  s = small_sweep();
  s.axis.count = 1;
  CHECK_THROWS_AS(run_sweep(s), ConfigError);
}
