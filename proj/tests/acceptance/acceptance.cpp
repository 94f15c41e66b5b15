// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cmm/emit.hpp"
#include "cmm/gaussian.hpp"
#include "cmm/lyapunov.hpp"
#include "cmm/measures.hpp"
#include "cmm/oracles.hpp"
#include "cmm/presets.hpp"
#include "cmm/sweep.hpp"
#include "cmm/wigner.hpp"
#include "../test_support.hpp"

using namespace cmm;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<SweepSpec> all_sweeps() {
  std::vector<SweepSpec> out;
  for (const auto& id : figure_ids()) {
    for (auto& s : figure_preset(id).sweeps) out.push_back(std::move(s));
  }
  return out;
}

std::size_t index_of(const SweepSpec& s, const std::string& name) {
  for (std::size_t k = 0; k < s.outputs.size(); ++k) {
    if (s.outputs[k].name == name) return k;
  }
  throw std::runtime_error("measure " + name + " missing from " + s.name);
}

std::string fmt(double v) { return format_number(v); }

Outcome ac1_lyapunov() {
  Outcome o;
  double worst_res = 0.0, worst_agree = 0.0;
  const auto t0 = Clock::now();
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto sys = oracles::random_stable_system(seed);
    const Eigen::MatrixXd C = solve_lyapunov(sys.A, sys.F);
    const Eigen::MatrixXd ref = oracles::lyapunov_integral_oracle(sys.A, sys.F, 1e4, 1e-15);
    worst_res = std::max(worst_res, lyapunov_residual(sys.A, C, sys.F) / sys.F.cwiseAbs().maxCoeff());
    worst_agree = std::max(worst_agree, (C - ref).norm() / ref.norm());
  }
  const double t = seconds_since(t0);
  o.pass = worst_res <= 1e-10 && worst_agree <= 1e-6 && t < 5.0;
  o.detail = "max residual/|F| " + fmt(worst_res) + ", max oracle disagreement " + fmt(worst_agree) +
             ", " + fmt(t) + " s";
  return o;
}

Outcome ac2_negativity() {
  Outcome o;
  double worst = 0.0;
  for (double r : {0.1, 0.5, 1.0}) {
    const double e = log_negativity(CovarianceMatrix::unlabeled(testing::tmsv(r))).E_n;
    worst = std::max(worst, std::abs(e - 2 * r));
  }
  const double vac = log_negativity(CovarianceMatrix::unlabeled(0.5 * Eigen::MatrixXd::Identity(4, 4))).E_n;
  o.pass = worst <= 1e-9 && vac == 0.0;
  o.detail = "max |E_n - 2r| " + fmt(worst) + ", vacuum E_n " + fmt(vac);
  return o;
}

Outcome ac3_physicality(const std::vector<SweepSpec>& sweeps) {
  Outcome o;
  std::size_t checked = 0;
  double lowest = 1e300;
  for (const auto& s : sweeps) {
    const auto outer = s.outer ? std::vector<std::optional<double>>(s.outer->values.begin(), s.outer->values.end())
                               : std::vector<std::optional<double>>{std::nullopt};
    const std::vector<int> signs = s.barnett_pair ? std::vector<int>{1, -1} : std::vector<int>{0};
    for (const auto& ov : outer) {
      for (double v : s.axis.values()) {
        for (int sign : signs) {
          const LinearizedSystem sys = linearize(point_params(s, ov, v, sign));
          if (!sys.stability.stable || sys.stability.marginal) continue;
          const auto nu = symplectic_eigenvalues(solve_lyapunov(sys.drift, sys.diffusion));
          lowest = std::min(lowest, nu.front());
          ++checked;
        }
      }
    }
  }
  o.pass = checked > 0 && lowest >= 0.5 - 1e-9;
  o.detail = std::to_string(checked) + " stable points, smallest nu " + fmt(lowest);
  return o;
}

struct Window {
  int points = 0;
  double lo = 0.0, hi = 0.0;
  double peak = 0.0;
};

Window nonreciprocal_window(const SweepSpec& spec) {
  const SweepResult r = run_sweep(spec);
  const std::size_t k = index_of(spec, "E_m1m2");
  Window w;
  for (const auto& row : r.rows) {
    const auto& pos = row.directions[0].measures[k];
    const auto& neg = row.directions[1].measures[k];
    if (pos) w.peak = std::max(w.peak, *pos);
    if (pos && neg && *pos > 0.0 && *neg == 0.0) {
      if (w.points == 0) w.lo = row.value;
      w.hi = row.value;
      ++w.points;
    }
  }
  return w;
}

Outcome ac4_nonreciprocity() {
  Outcome o;
  SweepSpec base;
  for (auto& s : figure_preset("fig3").sweeps) {
    if (s.name == "fig3_Jg1") base = s;
  }
  const Window w0 = nonreciprocal_window(base);
  o.pass = w0.points > 0;
  o.detail = std::to_string(w0.points) + " points with X = 1, delta_c/omega_b in [" + fmt(w0.lo) + ", " +
             fmt(w0.hi) + "], peak E_m1m2 " + fmt(w0.peak);

  struct Variation {
    std::string label;
    std::string parameter;
    double value;
  };
  const PhysicalParams& p = base.params;
  const double two_pi = constants::two_pi;
  const std::vector<Variation> table = {
      {"kappa_c x0.5", "kappa_c_hz", 0.5 * p.kappa_c / two_pi},
      {"kappa_c x2", "kappa_c_hz", 2.0 * p.kappa_c / two_pi},
      {"delta_m1 0.6 omega_b", "delta_m1_over_omega_b", 0.6},
      {"delta_m1 1.0 omega_b", "delta_m1_over_omega_b", 1.0},
      {"delta_m2 -0.8 omega_b", "delta_m2_over_omega_b", -0.8},
      {"delta_m2 -1.2 omega_b", "delta_m2_over_omega_b", -1.2},
      {"omega_b x0.5", "omega_b_hz", 0.5 * p.omega_b / two_pi},
      {"omega_b x2", "omega_b_hz", 2.0 * p.omega_b / two_pi},
      {"G x0.75", "G_direct_hz", 0.75 * *p.G_direct / two_pi},
      {"G x1.25", "G_direct_hz", 1.25 * *p.G_direct / two_pi},
  };
  std::cout << "  sensitivity of the X = 1 window (fig3_Jg1 grid, 301 points):\n";
  std::cout << "    variation               points  delta_c range             peak E_m1m2\n";
  std::printf("    %-22s %6d  [%8.3f, %8.3f]      %.4g\n", "baseline", w0.points, w0.lo, w0.hi, w0.peak);
  for (const auto& v : table) {
    SweepSpec s = base;
    // Detunings are held relative to omega_b when omega_b itself changes.
    apply_parameter(s.params, v.parameter, v.value);
    if (v.parameter == "omega_b_hz") {
      apply_parameter(s.params, "delta_m1_over_omega_b", 0.8);
      apply_parameter(s.params, "delta_m2_over_omega_b", -1.0);
      apply_parameter(s.params, "delta_b_over_omega_b", 0.2);
    }
    const Window w = nonreciprocal_window(s);
    if (w.points > 0) {
      std::printf("    %-22s %6d  [%8.3f, %8.3f]      %.4g\n", v.label.c_str(), w.points, w.lo, w.hi, w.peak);
    } else {
      std::printf("    %-22s %6d  none                      %.4g\n", v.label.c_str(), w.points, w.peak);
    }
  }
  return o;
}

Outcome ac5_thermal() {
  Outcome o;
  std::ostringstream detail;
  double worst_rise = 0.0;
  double latest_zero = 0.0;
  for (const auto& s : figure_preset("fig4").sweeps) {
    const SweepResult r = run_sweep(s);
    for (std::size_t k = 0; k < s.outputs.size(); ++k) {
      std::vector<double> e, t;
      for (const auto& row : r.rows) {
        const auto& m = row.directions[0].measures[k];
        if (!m) {
          o.pass = false;
          detail << s.name << " has NA points; ";
          continue;
        }
        e.push_back(*m);
        t.push_back(row.value);
      }
      const auto peak = std::max_element(e.begin(), e.end()) - e.begin();
      for (std::size_t i = static_cast<std::size_t>(peak) + 1; i < e.size(); ++i) {
        worst_rise = std::max(worst_rise, e[i] - e[i - 1]);
      }
      const auto zero = std::find(e.begin() + peak, e.end(), 0.0);
      if (zero == e.end() || t[zero - e.begin()] > 0.25) {
        o.pass = false;
        detail << s.name << "/" << s.outputs[k].name << " never reaches 0; ";
      } else {
        latest_zero = std::max(latest_zero, t[zero - e.begin()]);
      }
    }
  }
  if (worst_rise > 0.0) o.pass = false;

  double r_above = 0.0;
  double r_zero_at = 0.0;
  for (const auto& s : figure_preset("fig8").sweeps) {
    if (!s.name.starts_with("fig8b")) continue;
    if (s.params.delta_B == 0.0) continue;
    const std::size_t k = index_of(s, "R_m1cb");
    const SweepResult r = run_sweep(s);
    double first_zero = -1.0;
    for (const auto& row : r.rows) {
      const auto& m = row.directions[0].measures[k];
      if (!m) {
        o.pass = false;
        continue;
      }
      if (row.value >= 0.15) r_above = std::max(r_above, *m);
      if (*m == 0.0 && first_zero < 0.0) first_zero = row.value;
    }
    r_zero_at = std::max(r_zero_at, first_zero);
  }
  if (r_above > 0.0) o.pass = false;
  detail << "largest rise after peak " << fmt(worst_rise) << ", all E_n zero by T = " << fmt(latest_zero)
         << " K, R_min zero from T = " << fmt(r_zero_at) << " K, max R_min for T >= 0.15 K " << fmt(r_above);
  o.detail = detail.str();
  return o;
}

Outcome ac6_contrast() {
  Outcome o;
  std::size_t points = 0, both_zero = 0;
  for (const auto& s : figure_preset("fig7").sweeps) {
    const SweepResult r = run_sweep(s);
    for (const auto& row : r.rows) {
      for (std::size_t k = 0; k < row.contrast.size(); ++k) {
        const auto& x = row.contrast[k];
        const auto& pos = row.directions[0].measures[k];
        const auto& neg = row.directions[1].measures[k];
        if (!x) {
          if (pos && neg) o.pass = false;
          continue;
        }
        ++points;
        if (*x < 0.0 || *x > 1.0) o.pass = false;
        if (*pos == 0.0 && *neg == 0.0) {
          ++both_zero;
          if (*x != 0.0) o.pass = false;
        }
      }
    }
  }
  o.pass = o.pass && points > 0;
  o.detail = std::to_string(points) + " contrast values in [0, 1], " + std::to_string(both_zero) +
             " with both directions zero";
  return o;
}

Outcome ac7_monogamy() {
  Outcome o;
  std::size_t checked = 0;
  double lowest = 1e300;
  for (const auto& s : figure_preset("fig8").sweeps) {
    const SweepResult r = run_sweep(s);
    for (const auto& row : r.rows) {
      for (const auto& d : row.directions) {
        if (!d.stable || !d.physical) continue;
        for (const auto& raw : d.raw_contangles) {
          if (!raw) continue;
          lowest = std::min(lowest, *raw);
          ++checked;
        }
      }
    }
  }
  o.pass = checked > 0 && lowest >= -1e-9;
  o.detail = std::to_string(checked) + " raw contangles, smallest " + fmt(lowest);
  return o;
}

Outcome ac8_wigner() {
  Outcome o;
  double worst_integral = 0.0, worst_area = 0.0;
  auto check_grid = [&](const WignerGrid& g, const CovarianceMatrix& C2) {
    worst_integral = std::max(worst_integral, std::abs(grid_integral(g) - 1.0));
    const double want = 2 * std::numbers::pi * std::sqrt(C2.entries().determinant());
    worst_area = std::max(worst_area, std::abs(g.contour.area() - want) / want);
  };
  for (const auto& job : figure_preset("fig6").wigner) {
    const WignerReport r = make_wigner_report(job.name, job.mode, job.params, job.settings, job.provenance);
    const CovarianceMatrix C = solve_lyapunov(linearize(job.params).drift, build_diffusion(job.params));
    check_grid(r.grid, reduce(C, ModeSelection{job.mode}));
  }
  for (unsigned seed = 1; seed <= 20; ++seed) {
    const auto C2 = CovarianceMatrix::unlabeled(testing::williamson_state({0.5 + 0.1 * seed}, seed));
    check_grid(wigner_grid(C2), C2);
  }
  const auto vac = contour_ellipse(CovarianceMatrix::unlabeled(0.5 * Eigen::MatrixXd::Identity(2, 2)));
  const double radius_err = std::max(std::abs(vac.a - 1.0), std::abs(vac.b - 1.0));
  o.pass = worst_integral <= 1e-3 && radius_err <= 1e-6 && worst_area <= 1e-6;
  o.detail = "max |integral - 1| " + fmt(worst_integral) + ", vacuum radius error " + fmt(radius_err) +
             ", max relative area error " + fmt(worst_area);
  return o;
}

std::map<std::string, std::string> read_dir(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    files[entry.path().filename().string()] = buf.str();
  }
  return files;
}

Outcome ac9_determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / ("cmm_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  std::vector<std::map<std::string, std::string>> runs;
  for (int threads : {1, 4}) {
    const fs::path dir = root / ("t" + std::to_string(threads));
    const std::string cmd = std::string("\"") + CMM_CLI_PATH + "\" figure fig2 --format csv --threads " +
                            std::to_string(threads) + " --out \"" + dir.string() + "\" 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    // Exit code 3 flags assumed parameters, which the preset uses.
    if (!WIFEXITED(rc) || (WEXITSTATUS(rc) != 0 && WEXITSTATUS(rc) != 3)) {
      o.pass = false;
      o.detail = "cli exited with status " + std::to_string(rc);
      fs::remove_all(root);
      return o;
    }
    runs.push_back(read_dir(dir));
  }
  fs::remove_all(root);
  o.pass = !runs[0].empty() && runs[0] == runs[1];
  std::size_t bytes = 0;
  for (const auto& [name, text] : runs[0]) bytes += text.size();
  o.detail = std::to_string(runs[0].size()) + " csv files, " + std::to_string(bytes) +
             " bytes, threads 1 vs 4 " + (o.pass ? "identical" : "differ");
  return o;
}

Outcome ac10_performance() {
  Outcome o;
  SweepSpec s;
  s.name = "perf";
  s.base = "table1";
  s.params = table1_config().params;
  s.axis = {"delta_c_over_omega_b", -2.0, 1.0, 500};
  s.outputs = {parse_measure("E_m1m2"), parse_measure("E_m2b"), parse_measure("E_cb")};
  apply_parameter(s.params, "delta_b_over_omega_b", 0.2);
  const auto t0 = Clock::now();
  const SweepResult r = run_sweep(s, 4);
  const double t = seconds_since(t0);
  std::size_t ok = 0;
  for (const auto& row : r.rows) ok += row.directions[0].stable ? 1 : 0;
  o.pass = r.rows.size() == 500 && t < 1.0;
  o.detail = "500 points (" + std::to_string(ok) + " stable) in " + fmt(t) + " s on 4 threads";
  return o;
}

}  // namespace

int main() {
  const std::vector<SweepSpec> sweeps = all_sweeps();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 lyapunov solver vs oracle", ac1_lyapunov},
      {"AC2 analytic negativity", ac2_negativity},
      {"AC3 physicality across presets", [&] { return ac3_physicality(sweeps); }},
      {"AC4 nonreciprocal window", ac4_nonreciprocity},
      {"AC5 thermal decay", ac5_thermal},
      {"AC6 contrast ratio bounds", ac6_contrast},
      {"AC7 monogamy", ac7_monogamy},
      {"AC8 wigner normalization and geometry", ac8_wigner},
      {"AC9 determinism across thread counts", ac9_determinism},
      {"AC10 sweep performance", ac10_performance},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
