// cmm: steady-state entanglement sweeps for the four-mode magnomechanical model.
//
// Exit status: 0 success, 3 success but the run used assumed parameters,
// 1 configuration error, 2 numerical or runtime error.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cmm/config.hpp"
#include "cmm/emit.hpp"
#include "cmm/gaussian.hpp"
#include "cmm/lyapunov.hpp"
#include "cmm/oracles.hpp"
#include "cmm/presets.hpp"
#include "cmm/sweep.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_runtime = 2;
constexpr int exit_assumed = 3;

struct Options {
  std::string format = "csv";
  int threads = 0;
  std::uint64_t seed = 1;
  std::string out;
  std::string config;
  std::string figure;
  std::string mode;
  int count = 100;
};

std::optional<std::filesystem::path> output_dir(const Options& o) {
  if (!o.out.empty()) return std::filesystem::path(o.out);
  if (const char* env = std::getenv("CMM_OUT_DIR"); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

void print_banner(const std::string& what, const cmm::Provenance& prov) {
  std::cerr << "[cmm] " << what << "\n";
  for (const auto& l : prov.banner()) std::cerr << "[cmm]   " << l << "\n";
}

int success(const cmm::Provenance& prov) { return prov.uses_assumptions() ? exit_assumed : exit_ok; }

void deliver(const std::optional<std::filesystem::path>& dir, const std::string& stem,
             std::string_view ext, const std::string& content) {
  if (!dir) {
    std::cout << content;
    return;
  }
  const auto path = *dir / (stem + std::string(ext));
  cmm::write_text(path, content);
  std::cerr << "[cmm] wrote " << path.string() << "\n";
}

int cmd_run(const Options& o) {
  const cmm::Config cfg = cmm::load_config(o.config);
  if (!cfg.sweep) throw cmm::ConfigError("sweep", 0, "config has no [sweep] section");
  const cmm::Format fmt = cmm::parse_format(o.format);
  print_banner("sweep " + cfg.sweep->name, cfg.provenance);
  const cmm::SweepResult r = cmm::run_sweep(*cfg.sweep, o.threads);
  deliver(output_dir(o), cfg.sweep->name, cmm::extension(fmt), cmm::emit_sweep(r, fmt));
  return success(cfg.provenance);
}

void emit_wigner(const cmm::WignerReport& rep, cmm::Format fmt,
                 const std::optional<std::filesystem::path>& dir) {
  switch (fmt) {
    case cmm::Format::csv:
      deliver(dir, rep.name, ".csv", cmm::wigner_csv(rep));
      if (dir) deliver(dir, rep.name + "_contour", ".json", cmm::wigner_json(rep));
      break;
    case cmm::Format::json:
      deliver(dir, rep.name + "_contour", ".json", cmm::wigner_json(rep));
      break;
    case cmm::Format::svg:
      deliver(dir, rep.name, ".svg", cmm::wigner_svg(rep));
      break;
  }
}

int cmd_figure(const Options& o) {
  const cmm::FigurePreset fig = cmm::figure_preset(o.figure);
  const cmm::Format fmt = cmm::parse_format(o.format);
  const auto dir = output_dir(o).value_or(std::filesystem::path("out") / fig.id);
  cmm::Provenance prov;
  for (const auto& s : fig.sweeps) {
    print_banner("figure " + fig.id + ": " + s.name, s.provenance);
    const cmm::SweepResult r = cmm::run_sweep(s, o.threads);
    deliver(dir, s.name, cmm::extension(fmt), cmm::emit_sweep(r, fmt));
    prov = s.provenance;
  }
  for (const auto& job : fig.wigner) {
    print_banner("figure " + fig.id + ": " + job.name, job.provenance);
    emit_wigner(cmm::make_wigner_report(job.name, job.mode, job.params, job.settings, job.provenance),
                fmt, dir);
    prov = job.provenance;
  }
  return success(prov);
}

int cmd_wigner(const Options& o) {
  const cmm::Config cfg = cmm::load_config(o.config);
  const cmm::Mode mode = cmm::parse_mode(o.mode);
  const std::string name = std::filesystem::path(o.config).stem().string() + "_wigner_" + o.mode;
  print_banner("wigner " + name, cfg.provenance);
  emit_wigner(cmm::make_wigner_report(name, mode, cfg.params, cfg.wigner, cfg.provenance),
              cmm::parse_format(o.format), output_dir(o));
  return success(cfg.provenance);
}

int cmd_check(const Options& o) {
  const cmm::Config cfg = cmm::load_config(o.config);
  print_banner("check " + o.config, cfg.provenance);
  const cmm::LinearizedSystem sys = cmm::linearize(cfg.params);
  std::cout << "spectral_abscissa = " << cmm::format_number(sys.stability.spectral_abscissa) << "\n"
            << "stable = " << (sys.stability.stable ? "yes" : "no")
            << (sys.stability.marginal ? " (marginal)" : "") << "\n"
            << "G_eff = " << cmm::format_number(sys.steady.G_eff.real()) << " + "
            << cmm::format_number(sys.steady.G_eff.imag()) << "i\n";
  if (sys.steady.g_has_imaginary_part()) std::cout << "warning: G has an imaginary part\n";
  if (!sys.stability.stable || sys.stability.marginal) return exit_runtime;
  const cmm::CovarianceMatrix C = cmm::solve_lyapunov(sys.drift, sys.diffusion);
  std::cout << "symplectic_eigenvalues =";
  for (double nu : cmm::symplectic_eigenvalues(C)) std::cout << " " << cmm::format_number(nu);
  const bool physical = cmm::physicality_check(C);
  std::cout << "\nphysical = " << (physical ? "yes" : "no") << "\n";
  return physical ? success(cfg.provenance) : exit_runtime;
}

int cmd_verify(const Options& o) {
  double worst_residual = 0.0;
  double worst_agreement = 0.0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int k = 0; k < o.count; ++k) {
    const auto sys = cmm::oracles::random_stable_system(o.seed + static_cast<std::uint64_t>(k));
    const Eigen::MatrixXd C = cmm::solve_lyapunov(sys.A, sys.F);
    const Eigen::MatrixXd ref = cmm::oracles::lyapunov_integral_oracle(sys.A, sys.F, 1e4, 1e-15);
    worst_residual = std::max(worst_residual, cmm::lyapunov_residual(sys.A, C, sys.F) / sys.F.cwiseAbs().maxCoeff());
    worst_agreement = std::max(worst_agreement, (C - ref).norm() / ref.norm());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "systems = " << o.count << ", seed = " << o.seed << "\n"
            << "max relative residual = " << cmm::format_number(worst_residual) << "\n"
            << "max relative oracle disagreement = " << cmm::format_number(worst_agreement) << "\n"
            << "seconds = " << seconds << "\n";
  return (worst_residual <= 1e-10 && worst_agreement <= 1e-6) ? exit_ok : exit_runtime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state entanglement and nonreciprocity in cavity magnomechanics"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "csv, json or svg-plot")
        ->check(CLI::IsMember({"csv", "json", "svg-plot"}));
    sub->add_option("--threads", o.threads, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", o.out, "output directory (overrides CMM_OUT_DIR)");
  };

  auto* run = app.add_subcommand("run", "run the [sweep] section of a config");
  run->add_option("config", o.config)->required();
  add_common(run);

  auto* figure = app.add_subcommand("figure", "run a figure preset (fig2 ... fig8)");
  figure->add_option("id", o.figure)->required();
  add_common(figure);

  auto* wigner = app.add_subcommand("wigner", "single-mode Wigner grid of a config");
  wigner->add_option("config", o.config)->required();
  wigner->add_option("--mode", o.mode)->required()->check(CLI::IsMember({"c", "m1", "m2", "b"}));
  add_common(wigner);

  auto* check = app.add_subcommand("check", "stability and physicality of a config");
  check->add_option("config", o.config)->required();

  auto* verify = app.add_subcommand("verify", "Lyapunov solver against the integral oracle on random systems");
  verify->add_option("--seed", o.seed, "first seed of the randomized corpus");
  verify->add_option("--count", o.count, "number of systems")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_config;
  }

  try {
    if (*run) return cmd_run(o);
    if (*figure) return cmd_figure(o);
    if (*wigner) return cmd_wigner(o);
    if (*check) return cmd_check(o);
    if (*verify) return cmd_verify(o);
  } catch (const cmm::ConfigError& e) {
    std::cerr << "cmm: config error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "cmm: error: " << e.what() << "\n";
    return exit_runtime;
  }
  return exit_config;
}
