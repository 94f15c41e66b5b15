#include "cmm/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "cmm/gaussian.hpp"
#include "cmm/lyapunov.hpp"
#include "cmm/measures.hpp"
#include "cmm/wigner.hpp"

namespace cmm {

namespace {

std::string direction_suffix(std::size_t n_dirs, std::size_t d) {
  if (n_dirs == 1) return "";
  return d == 0 ? "_pos" : "_neg";
}

bool has_contrast(const MeasureRequest& m) { return m.kind != MeasureKind::squeezing; }

}  // namespace

PointResult evaluate_point(const PhysicalParams& p, const std::vector<MeasureRequest>& outputs) {
  PointResult r;
  r.measures.assign(outputs.size(), std::nullopt);
  std::size_t n_tri = 0;
  for (const auto& m : outputs) n_tri += m.kind == MeasureKind::tripartite;
  r.raw_contangles.assign(n_tri, std::nullopt);

  try {
    const LinearizedSystem sys = linearize(p);
    r.evaluated = true;
    r.g_imaginary = sys.steady.g_has_imaginary_part();
    r.stable = sys.stability.stable && !sys.stability.marginal;
    r.marginal = sys.stability.marginal;
    r.spectral_abscissa = sys.stability.spectral_abscissa;
    if (!r.stable) return r;

    const CovarianceMatrix C = solve_lyapunov(sys.drift, sys.diffusion);
    r.physical = physicality_check(C);
    if (!r.physical) return r;

    std::size_t tri = 0;
    for (std::size_t k = 0; k < outputs.size(); ++k) {
      const auto& m = outputs[k];
      const CovarianceMatrix sub = reduce(C, ModeSelection(m.modes));
      switch (m.kind) {
        case MeasureKind::bipartite:
          r.measures[k] = log_negativity(sub).E_n;
          break;
        case MeasureKind::tripartite: {
          const TripartiteResult t = min_residual_contangle(sub);
          r.measures[k] = t.R_min;
          double raw = t.pivots[0].raw;
          for (const auto& pv : t.pivots) raw = std::min(raw, pv.raw);
          r.raw_contangles[tri++] = raw;
          r.monogamy_violation = r.monogamy_violation || t.monogamy_violation();
          break;
        }
        case MeasureKind::squeezing:
          r.measures[k] = quadrature_squeezing(sub).min_variance;
          break;
      }
    }
  } catch (const std::exception& e) {
    r.error = e.what();
    std::fill(r.measures.begin(), r.measures.end(), std::nullopt);
    std::fill(r.raw_contangles.begin(), r.raw_contangles.end(), std::nullopt);
  }
  return r;
}

PhysicalParams point_params(const SweepSpec& spec, std::optional<double> outer, double value,
                            int sign) {
  PhysicalParams p = spec.params;
  if (outer) apply_parameter(p, spec.outer->parameter, *outer);
  apply_parameter(p, spec.axis.parameter, value);
  if (sign != 0) p.delta_B = sign * std::abs(p.delta_B);
  return p;
}

SweepResult run_sweep(const SweepSpec& spec, int threads) {
  spec.validate();
  SweepResult result;
  result.spec = spec;

  const std::vector<double> inner = spec.axis.values();
  const std::vector<std::optional<double>> outer_values = [&] {
    std::vector<std::optional<double>> v;
    if (spec.outer) {
      for (double x : spec.outer->values) v.emplace_back(x);
    } else {
      v.emplace_back(std::nullopt);
    }
    return v;
  }();

  result.rows.resize(inner.size() * outer_values.size());
  for (std::size_t o = 0; o < outer_values.size(); ++o) {
    for (std::size_t i = 0; i < inner.size(); ++i) {
      SweepRow& row = result.rows[o * inner.size() + i];
      row.outer = outer_values[o];
      row.value = inner[i];
    }
  }

  auto work = [&](std::size_t idx) {
    SweepRow& row = result.rows[idx];
    if (spec.barnett_pair) {
      for (int sign : {+1, -1}) {
        row.directions.push_back(evaluate_point(point_params(spec, row.outer, row.value, sign), spec.outputs));
      }
      const auto& pos = row.directions[0];
      const auto& neg = row.directions[1];
      for (std::size_t k = 0; k < spec.outputs.size(); ++k) {
        if (!has_contrast(spec.outputs[k])) continue;
        if (pos.measures[k] && neg.measures[k]) {
          row.contrast.emplace_back(contrast_ratio(*pos.measures[k], *neg.measures[k]));
        } else {
          row.contrast.emplace_back(std::nullopt);
        }
      }
    } else {
      row.directions.push_back(evaluate_point(point_params(spec, row.outer, row.value, 0), spec.outputs));
    }
  };

  const std::size_t n = result.rows.size();
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
    return result;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) work(i);
      });
    }
  }
  return result;
}

Table to_table(const SweepResult& result) {
  const SweepSpec& spec = result.spec;
  const std::size_t n_dirs = spec.barnett_pair ? 2 : 1;
  Table t;
  if (spec.outer) t.columns.push_back(spec.outer->parameter);
  t.columns.push_back(spec.axis.parameter);
  for (std::size_t d = 0; d < n_dirs; ++d) {
    const std::string s = direction_suffix(n_dirs, d);
    t.columns.push_back("stable" + s);
    t.columns.push_back("spectral_abscissa" + s);
    for (const auto& m : spec.outputs) t.columns.push_back(m.name + s);
    for (const auto& m : spec.outputs) {
      if (m.kind == MeasureKind::tripartite) t.columns.push_back(m.name + "_raw" + s);
    }
  }
  if (spec.barnett_pair) {
    for (const auto& m : spec.outputs) {
      if (has_contrast(m)) t.columns.push_back("X_" + m.name);
    }
  }

  for (const SweepRow& row : result.rows) {
    std::vector<std::optional<double>> cells;
    std::string note;
    auto add_note = [&](const std::string& s) { note += (note.empty() ? "" : "; ") + s; };
    if (row.outer) cells.emplace_back(row.outer);
    cells.emplace_back(row.value);
    for (std::size_t d = 0; d < row.directions.size(); ++d) {
      const PointResult& pr = row.directions[d];
      const std::string tag = n_dirs == 1 ? "" : (d == 0 ? "pos: " : "neg: ");
      if (pr.evaluated) {
        cells.emplace_back(pr.stable ? 1.0 : 0.0);
        cells.emplace_back(pr.spectral_abscissa);
      } else {
        cells.emplace_back(std::nullopt);
        cells.emplace_back(std::nullopt);
      }
      cells.insert(cells.end(), pr.measures.begin(), pr.measures.end());
      cells.insert(cells.end(), pr.raw_contangles.begin(), pr.raw_contangles.end());
      if (!pr.error.empty()) add_note(tag + "error: " + pr.error);
      else if (pr.marginal) add_note(tag + "marginal");
      else if (pr.evaluated && !pr.stable) add_note(tag + "unstable");
      else if (pr.evaluated && !pr.physical) add_note(tag + "unphysical");
      if (pr.monogamy_violation) add_note(tag + "monogamy violation");
      if (pr.g_imaginary) add_note(tag + "G has imaginary part");
    }
    cells.insert(cells.end(), row.contrast.begin(), row.contrast.end());
    t.numeric.push_back(std::move(cells));
    t.notes.push_back(note.empty() ? "ok" : note);
  }
  return t;
}

}  // namespace cmm
