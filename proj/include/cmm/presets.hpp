#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cmm/config.hpp"

namespace cmm {

/// Text of the shipped baseline config (configs/table1.ini).
std::string_view table1_text();
Config table1_config();

struct WignerJob {
  std::string name;
  Mode mode = Mode::c;
  PhysicalParams params;
  WignerSettings settings;
  Provenance provenance;
};

struct FigurePreset {
  std::string id;
  std::vector<SweepSpec> sweeps;
  std::vector<WignerJob> wigner;
};

/// fig2 ... fig8. Unknown ids throw ConfigError.
FigurePreset figure_preset(std::string_view id);
const std::vector<std::string>& figure_ids();

}  // namespace cmm
