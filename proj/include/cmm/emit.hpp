#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cmm/config.hpp"
#include "cmm/sweep.hpp"
#include "cmm/wigner.hpp"

namespace cmm {

enum class Format { csv, json, svg };

/// "csv", "json" or "svg-plot".
Format parse_format(std::string_view s);
std::string_view extension(Format f);

/// Shortest decimal string that reads back to the same double.
std::string format_number(double v);

/// Every parameter in rad/s (temperature in K), one "name = value" per entry.
std::vector<std::string> describe_params(const PhysicalParams& p);

std::string sweep_csv(const SweepResult& r);
std::string sweep_json(const SweepResult& r);
/// Line chart of the measure and contrast columns against the swept value,
/// broken at NA points; a heatmap of the first measure for two-axis sweeps.
std::string sweep_svg(const SweepResult& r);
std::string emit_sweep(const SweepResult& r, Format f);

struct WignerReport {
  std::string name;
  PhysicalParams params;
  Provenance provenance;
  WignerGrid grid;
  double integral = 0.0;
  SqueezingReport squeezing;
};

/// Steady state -> reduced covariance of `mode` -> grid. Throws on an
/// unstable or unphysical configuration.
WignerReport make_wigner_report(const std::string& name, Mode mode, const PhysicalParams& p,
                                const WignerSettings& settings, const Provenance& prov);

std::string wigner_csv(const WignerReport& r);   // x, p, W rows
std::string wigner_json(const WignerReport& r);  // contour parameters
std::string wigner_svg(const WignerReport& r);

/// Writes atomically enough for our purposes; throws Error on I/O failure.
void write_text(const std::filesystem::path& path, std::string_view content);

}  // namespace cmm
