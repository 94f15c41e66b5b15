#include "cmm/presets.hpp"

#include <cmath>
#include <cstdio>

#include "table1_ini.hpp"

namespace cmm {

namespace {

constexpr double delta_b_magnitudes[] = {0.15, 0.2, 0.25};

std::string tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%03d", v < 0 ? "m" : v > 0 ? "p" : "", static_cast<int>(std::abs(v) * 100 + 0.5));
  return buf;
}

SweepSpec base_sweep(const Config& cfg, std::string name, std::string parameter, double start,
                     double stop, int count, std::vector<std::string> outputs) {
  SweepSpec s;
  s.name = std::move(name);
  s.base = "table1";
  s.params = cfg.params;
  s.provenance = cfg.provenance;
  s.axis = {std::move(parameter), start, stop, count};
  for (const auto& o : outputs) s.outputs.push_back(parse_measure(o));
  return s;
}

void note(SweepSpec& s, std::string text) { s.provenance.notes.push_back(std::move(text)); }

void set_delta_b(SweepSpec& s, double over_omega_b) {
  apply_parameter(s.params, "delta_b_over_omega_b", over_omega_b);
}

const std::vector<std::string> bipartite = {"E_m1m2", "E_m2b", "E_cb"};

FigurePreset fig2(const Config& cfg) {
  FigurePreset f{"fig2", {}, {}};
  SweepSpec s = base_sweep(cfg, "fig2_density", "delta_c_over_omega_b", -2.0, 1.0, 61, bipartite);
  OuterAxis outer{"delta_m2_over_omega_b", {}};
  for (int i = 0; i < 61; ++i) outer.values.push_back(i == 60 ? 1.0 : -2.0 + 3.0 * i / 60);
  s.outer = std::move(outer);
  apply_parameter(s.params, "J_hz", 0.0);
  set_delta_b(s, 0.0);
  note(s, "density map over delta_c and delta_m2 with J = delta_B = 0 (caption)");
  f.sweeps.push_back(std::move(s));
  return f;
}

FigurePreset fig3(const Config& cfg) {
  FigurePreset f{"fig3", {}, {}};
  for (double j : {0.0, 1.0}) {
    SweepSpec s = base_sweep(cfg, j == 0.0 ? "fig3_J0" : "fig3_Jg1", "delta_c_over_omega_b", -2.0,
                             1.0, 301, bipartite);
    apply_parameter(s.params, "J_over_g1", j);
    set_delta_b(s, 0.2);
    s.barnett_pair = true;
    note(s, j == 0.0 ? "J = 0, |delta_B| = 0.2 omega_b (caption)"
                     : "J = g1, |delta_B| = 0.2 omega_b (caption)");
    f.sweeps.push_back(std::move(s));
  }
  return f;
}

FigurePreset fig4(const Config& cfg) {
  FigurePreset f{"fig4", {}, {}};
  for (double db : {0.0, 0.2, -0.2}) {
    SweepSpec s = base_sweep(cfg, "fig4_dB" + tag(db), "temperature_k", 0.0, 0.25, 101, bipartite);
    set_delta_b(s, db);
    note(s, "J = 3.2e6 Hz from the caption, where it is highlighted as uncertain");
    f.sweeps.push_back(std::move(s));
  }
  return f;
}

FigurePreset fig5(const Config& cfg) {
  FigurePreset f{"fig5", {}, {}};
  for (double db : {0.0, 0.2, -0.2}) {
    SweepSpec s = base_sweep(cfg, "fig5_dB" + tag(db), "J_over_g1", 0.0, 2.5, 101, bipartite);
    set_delta_b(s, db);
    f.sweeps.push_back(std::move(s));
  }
  return f;
}

FigurePreset fig6(const Config& cfg) {
  FigurePreset f{"fig6", {}, {}};
  for (double db : {0.2, -0.2}) {
    for (Mode m : all_modes) {
      WignerJob job;
      job.name = "fig6_" + std::string(mode_name(m)) + "_dB" + tag(db);
      job.mode = m;
      job.params = cfg.params;
      apply_parameter(job.params, "delta_b_over_omega_b", db);
      job.settings = cfg.wigner;
      job.provenance = cfg.provenance;
      job.provenance.notes.push_back("J = 3.2e6 Hz (caption)");
      f.wigner.push_back(std::move(job));
    }
  }
  return f;
}

FigurePreset fig7(const Config& cfg) {
  FigurePreset f{"fig7", {}, {}};
  for (double db : delta_b_magnitudes) {
    SweepSpec s = base_sweep(cfg, "fig7_dB" + tag(db), "delta_c_over_omega_b", -2.0, 1.0, 301, bipartite);
    set_delta_b(s, db);
    s.barnett_pair = true;
    f.sweeps.push_back(std::move(s));
  }
  return f;
}

FigurePreset fig8(const Config& cfg) {
  FigurePreset f{"fig8", {}, {}};
  const std::vector<std::string> tri = {"R_m1cb"};
  struct Axis {
    const char* label;
    const char* parameter;
    double start, stop;
    int count;
  };
  const Axis axes[] = {{"a", "delta_c_over_omega_b", -2.0, 1.0, 301},
                       {"b", "temperature_k", 0.0, 0.25, 101},
                       {"c", "J_over_g1", 0.0, 2.5, 101}};
  for (const Axis& ax : axes) {
    for (double db : {0.2, 0.0, -0.2}) {
      SweepSpec s = base_sweep(cfg, std::string("fig8") + ax.label + "_dB" + tag(db), ax.parameter,
                               ax.start, ax.stop, ax.count, tri);
      set_delta_b(s, db);
      if (db < 0) note(s, "the negative delta_B curve has no stated magnitude; -0.2 omega_b assumed");
      f.sweeps.push_back(std::move(s));
    }
  }
  for (double db : delta_b_magnitudes) {
    SweepSpec s = base_sweep(cfg, "fig8d_dB" + tag(db), "delta_c_over_omega_b", -2.0, 1.0, 301, tri);
    set_delta_b(s, db);
    s.barnett_pair = true;
    f.sweeps.push_back(std::move(s));
  }
  return f;
}

}  // namespace

std::string_view table1_text() { return detail::table1_ini; }

Config table1_config() { return parse_config(table1_text(), "table1"); }

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
  return ids;
}

FigurePreset figure_preset(std::string_view id) {
  const Config cfg = table1_config();
  if (id == "fig2") return fig2(cfg);
  if (id == "fig3") return fig3(cfg);
  if (id == "fig4") return fig4(cfg);
  if (id == "fig5") return fig5(cfg);
  if (id == "fig6") return fig6(cfg);
  if (id == "fig7") return fig7(cfg);
  if (id == "fig8") return fig8(cfg);
  throw ConfigError(std::string(id), 0, "unknown figure id (expected fig2 ... fig8)");
}

}  // namespace cmm
