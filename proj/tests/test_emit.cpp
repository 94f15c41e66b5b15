#include "doctest.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "cmm/emit.hpp"
#include "cmm/presets.hpp"

using namespace cmm;

namespace {

SweepResult demo(bool pair) {
  SweepSpec s;
  s.name = "demo";
  s.base = "table1";
  s.params = table1_config().params;
  s.provenance = table1_config().provenance;
  s.axis = {"delta_c_over_omega_b", -2.0, 1.0, 13};
  s.outputs = {parse_measure("E_m1m2"), parse_measure("E_cb")};
  s.barnett_pair = pair;
  apply_parameter(s.params, "delta_b_over_omega_b", 0.2);
  return run_sweep(s, 2);
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    if (!line.starts_with("#")) out.push_back(line);
  }
  return out;
}

}  // namespace

TEST_CASE("shipped config file equals the embedded preset") {
  std::ifstream in(CMM_TABLE1_PATH);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == std::string(table1_text()));
}

TEST_CASE("shortest round-trip numbers") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1e-300) == "1e-300");
  for (double v : {1.0 / 3.0, 6.283185307179586e10, -2638502.407912857, 5e-324}) {
    const std::string s = format_number(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
  }
}

TEST_CASE("csv layout") {
  const SweepResult r = demo(true);
  const std::string csv = sweep_csv(r);
  CHECK(csv.starts_with("# sweep: demo"));
  CHECK(csv.find("# published values:") != std::string::npos);
  CHECK(csv.find("# assumed values:") != std::string::npos);
  CHECK(csv.find("X = 0 when both directions are 0") != std::string::npos);
  const auto lines = data_lines(csv);
  REQUIRE(lines.size() == 14);
  CHECK(lines[0] ==
        "delta_c_over_omega_b,stable_pos,spectral_abscissa_pos,E_m1m2_pos,E_cb_pos,stable_neg,"
        "spectral_abscissa_neg,E_m1m2_neg,E_cb_neg,X_E_m1m2,X_E_cb,note");
  CHECK(lines[1].starts_with("-2,1,"));
  CHECK(lines[13].starts_with("1,"));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK(std::count(lines[i].begin(), lines[i].end(), ',') == 11);
  }
  CHECK(sweep_csv(r) == csv);
}

TEST_CASE("json mirrors csv") {
  const SweepResult r = demo(false);
  const auto j = nlohmann::json::parse(sweep_json(r));
  const auto lines = data_lines(sweep_csv(r));
  CHECK(j["columns"].size() == 6);
  CHECK(j["rows"].size() == lines.size() - 1);
  CHECK(j["provenance"]["assumed"].size() == table1_config().provenance.assumed.size());
  const auto& row = j["rows"][3];
  std::istringstream cells(lines[4]);
  std::string cell;
  for (std::size_t c = 0; c + 1 < j["columns"].size(); ++c) {
    std::getline(cells, cell, ',');
    if (cell == "NA") {
      CHECK(row[c].is_null());
    } else {
      CHECK(row[c].get<double>() == std::stod(cell));
    }
  }
}

TEST_CASE("svg charts") {
  const std::string line = sweep_svg(demo(true));
  CHECK(line.starts_with("<svg"));
  CHECK(line.find("X_E_m1m2") != std::string::npos);
  CHECK(line.find("<path") != std::string::npos);

  SweepResult r = demo(false);
  r.spec.outer = OuterAxis{"temperature_k", {0.01}};
  for (auto& row : r.rows) row.outer = 0.01;
  const std::string heat = sweep_svg(r);
  CHECK(heat.find("<rect") != std::string::npos);
  CHECK(parse_format("svg-plot") == Format::svg);
  CHECK_THROWS_AS(parse_format("png"), ConfigError);
}

TEST_CASE("wigner exports") {
  const Config cfg = table1_config();
  const WignerReport rep = make_wigner_report("w", Mode::m1, cfg.params, {{}, 5.0, 21}, cfg.provenance);
  const std::string csv = wigner_csv(rep);
  const auto lines = data_lines(csv);
  REQUIRE(lines.size() == 1 + 21 * 21);
  CHECK(lines[0] == "x,p,W");
  const auto j = nlohmann::json::parse(wigner_json(rep));
  CHECK(j["mode"] == "m1");
  CHECK(j["contour"]["a"].get<double>() == rep.grid.contour.a);
  CHECK(wigner_svg(rep).find("<ellipse") != std::string::npos);

  PhysicalParams bad = cfg.params;
  apply_parameter(bad, "delta_c_over_omega_b", 1.0);
  apply_parameter(bad, "delta_m1_over_omega_b", 1.0);
  apply_parameter(bad, "G_direct_hz", 60e6);
  CHECK_THROWS_AS(make_wigner_report("bad", Mode::c, bad, {}, cfg.provenance), StabilityError);
}

TEST_CASE("write_text reports failures") {
  CHECK_THROWS_AS(write_text("/proc/definitely/not/here.csv", "x"), Error);
}
