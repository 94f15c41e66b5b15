#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmm/config.hpp"

namespace cmm {

// One evaluation of the pipeline at a single parameter point.
struct PointResult {
  bool evaluated = false;  // false if the model could not even be built
  bool stable = false;
  bool marginal = false;
  double spectral_abscissa = 0.0;
  bool physical = false;
  // One entry per requested measure, NA (nullopt) unless stable and physical.
  std::vector<std::optional<double>> measures;
  // Unclamped minimum pivot contangle per tripartite request, in request order.
  std::vector<std::optional<double>> raw_contangles;
  bool monogamy_violation = false;
  bool g_imaginary = false;
  std::string error;
};

/// Runs linearize -> stability gate -> Lyapunov -> physicality -> measures.
/// Never throws for numerical trouble; it lands in `error`.
PointResult evaluate_point(const PhysicalParams& p, const std::vector<MeasureRequest>& outputs);

struct SweepRow {
  std::optional<double> outer;
  double value = 0.0;
  // One entry, or two (+|delta_B| then -|delta_B|) in pair mode.
  std::vector<PointResult> directions;
  // Pair mode only: contrast per bipartite/tripartite measure, NA if either side is.
  std::vector<std::optional<double>> contrast;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;  // outer-major, then ascending inner index
};

/// Parameters of one grid point; `sign` is +1/-1 in pair mode, 0 otherwise.
PhysicalParams point_params(const SweepSpec& spec, std::optional<double> outer, double value,
                            int sign);

/// `threads` <= 0 picks the hardware concurrency. Output does not depend on it.
SweepResult run_sweep(const SweepSpec& spec, int threads = 0);

// Flat view used by every emitter.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> numeric;  // per row, per column
  std::vector<std::string> notes;                           // per row
};

Table to_table(const SweepResult& result);

}  // namespace cmm
