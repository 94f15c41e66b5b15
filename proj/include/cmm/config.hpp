#pragma once

// Plain-text configuration: INI-style sections of `key = value` lines.
//
//   [system]     physical parameters (required). Frequencies are ordinary
//                frequencies in Hz and must carry the `_hz` suffix; the
//                loader multiplies by 2 pi. Detunings may instead be given
//                relative to the drive (`delta_c_hz`) or normalized
//                (`delta_c_over_omega_b`); the coupling J may be `J_over_g1`.
//   [sweep]      optional parameter sweep.
//   [wigner]     optional Wigner-grid settings.
//   [provenance] which keys are published values and which are assumptions.
//
// Comments start with '#' or ';'. Unknown sections or keys, duplicate keys
// and frequency keys without a unit suffix are rejected with the line number.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cmm/covariance.hpp"
#include "cmm/model.hpp"

namespace cmm {

struct Provenance {
  std::vector<std::string> published;  // keys taken from published values
  std::vector<std::string> assumed;  // keys filled in by assumption
  std::vector<std::string> notes;

  bool uses_assumptions() const { return !assumed.empty(); }
  /// Human-readable block, one line per entry, no comment prefix.
  std::vector<std::string> banner() const;
};

enum class MeasureKind { bipartite, tripartite, squeezing };

struct MeasureRequest {
  MeasureKind kind = MeasureKind::bipartite;
  std::vector<Mode> modes;
  std::string name;  // E_m1m2, R_m1cb, V_c
};

/// "E_<a><b>", "R_<a><b><c>" or "V_<a>" with modes from {c, m1, m2, b}.
MeasureRequest parse_measure(std::string_view name);

struct SweepAxis {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  int count = 0;

  std::vector<double> values() const;  // linear, endpoints included
};

struct OuterAxis {
  std::string parameter;
  std::vector<double> values;
};

struct SweepSpec {
  std::string name;
  std::string base;  // where the base parameters came from
  PhysicalParams params;
  SweepAxis axis;
  std::optional<OuterAxis> outer;  // optional second, slower-varying axis
  std::vector<MeasureRequest> outputs;
  // Evaluate every point at +|delta_B| and -|delta_B| and report contrast ratios.
  bool barnett_pair = false;
  Provenance provenance;

  /// count >= 2, parameter names exist, outputs non-empty.
  void validate() const;
  std::size_t point_count() const;
};

struct WignerSettings {
  std::vector<Mode> modes;
  double half_range_sigmas = 5.0;
  int resolution = 201;
};

struct Config {
  std::string source;
  PhysicalParams params;
  std::optional<SweepSpec> sweep;
  WignerSettings wigner;
  Provenance provenance;
};

Config parse_config(std::string_view text, const std::string& source = "<string>");
Config load_config(const std::filesystem::path& path);

/// Sweepable names: every `[system]` key (`*_hz`, `temperature_k`) plus the
/// relative forms `delta_{c,m1,m2}_hz`, `delta_{c,m1,m2,b}_over_omega_b`
/// and `J_over_g1`. Hz values are converted to rad/s; detunings move the
/// mode frequency with the drive held fixed.
void apply_parameter(PhysicalParams& p, std::string_view name, double value);
bool is_parameter(std::string_view name);

}  // namespace cmm
