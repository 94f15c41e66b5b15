#include "cmm/model.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace cmm {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw ConfigError(name, 0, "must be finite");
}

void require_positive(double v, const char* name) {
  require_finite(v, name);
  if (!(v > 0.0)) throw ConfigError(name, 0, "must be strictly positive");
}

// Division that refuses denominators lost in cancellation: |den| must exceed
// 1e-14 of the magnitude of the terms that produced it.
complex checked_div(complex num, double den, double term_scale, const char* what) {
  if (!(std::abs(den) > 1e-14 * term_scale)) {
    throw SingularConfigurationError(std::string("zero denominator in steady-state ") + what);
  }
  return num / den;
}

}  // namespace

void PhysicalParams::validate() const {
  for (auto [v, n] : {std::pair{omega_c, "omega_c"}, {omega_m1, "omega_m1"},
                      {omega_m2, "omega_m2"}, {omega_drive, "omega_drive"},
                      {delta_B, "delta_B"}, {g1, "g1"}, {g2, "g2"}, {J, "J"}, {G0, "G0"}}) {
    require_finite(v, n);
  }
  require_positive(kappa_c, "kappa_c");
  require_positive(kappa_m1, "kappa_m1");
  require_positive(kappa_m2, "kappa_m2");
  require_positive(gamma_b, "gamma_b");
  require_positive(omega_b, "omega_b");
  require_finite(temperature, "temperature");
  if (temperature < 0.0) throw ConfigError("temperature", 0, "must be >= 0");
  if (drive_amplitude.has_value() == G_direct.has_value()) {
    throw ConfigError("drive_amplitude/G_direct", 0,
                      "exactly one of drive_amplitude and G_direct must be set");
  }
  if (drive_amplitude) require_finite(*drive_amplitude, "drive_amplitude");
  if (G_direct) {
    require_finite(*G_direct, "G_direct");
    if (*G_direct < 0.0) throw ConfigError("G_direct", 0, "must be >= 0");
  }
}

Detunings detunings(const PhysicalParams& p, double x_s) {
  Detunings d;
  d.delta_c = p.omega_c - p.omega_drive;
  d.delta_m1 = p.omega_m1 - p.omega_drive;
  d.delta_m2 = p.omega_m2 - p.omega_drive;
  d.delta_m1_tilde = d.delta_m1 + p.G0 * x_s;
  return d;
}

bool SteadyState::g_has_imaginary_part() const {
  const double mag = std::abs(G_eff);
  return mag > 0.0 && std::abs(G_eff.imag()) / mag > 1e-6;
}

double thermal_occupation(double omega, double temperature) {
  if (!(omega > 0.0)) throw DomainError("thermal_occupation: omega must be > 0");
  if (!(temperature >= 0.0)) throw DomainError("thermal_occupation: temperature must be >= 0");
  if (temperature == 0.0) return 0.0;
  const double ratio = constants::hbar * omega / (constants::boltzmann * temperature);
  return 1.0 / std::expm1(ratio);
}

SteadyState steady_state_map(const PhysicalParams& p, double x_s) {
  const Detunings d = detunings(p, x_s);
  const double psi = p.drive_amplitude.value_or(0.0);
  const double dm1 = d.delta_m1_tilde + p.delta_B;
  const double dm2 = d.delta_m2;
  const double dc = d.delta_c;
  const complex I{0.0, 1.0};

  const double t1 = dc * dm1 * dm2;
  const double t2 = p.J * p.J * dc;
  const double t3 = p.g1 * p.g1 * dm2;
  const double t4 = p.g2 * p.g2 * dm1;
  const double t5 = 2.0 * p.J * p.g1 * p.g2;
  const double den_c = t1 - t2 - t3 - t4 + t5;
  const double scale_c = std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4) + std::abs(t5);

  const double mix = p.g1 * dm2 - p.g2 * p.J;
  const double den_m1 = dm2 * dm1 - p.J * p.J;
  const double scale_m1 = std::abs(dm2 * dm1) + p.J * p.J;

  SteadyState s;
  s.c_s = checked_div(I * psi * mix, den_c, scale_c, "c_s");
  s.m1_s = -checked_div(mix * s.c_s + I * dm2 * psi, den_m1, scale_m1, "m1_s");
  s.m2_s = -checked_div(p.g2 * s.c_s + p.J * s.m1_s, dm2, std::abs(dm2) + p.omega_b, "m2_s");
  s.y_s = 0.0;
  s.x_s = -(p.G0 / p.omega_b) * std::norm(s.m1_s);
  s.G_eff = I * std::sqrt(2.0) * p.G0 * s.m1_s;
  return s;
}

SteadyState steady_state(const PhysicalParams& p) {
  p.validate();
  if (p.G_direct) {
    SteadyState s;
    s.G_eff = complex{*p.G_direct, 0.0};
    return s;
  }
  if (*p.drive_amplitude == 0.0) return SteadyState{};

  constexpr int max_iterations = 1000;
  constexpr double rel_tol = 1e-12;
  double x = 0.0;
  double relax = 1.0;
  double prev_step = 0.0;
  double prev_mag = -1.0;
  SteadyState s;
  for (int it = 1; it <= max_iterations; ++it) {
    s = steady_state_map(p, x);
    s.iterations = it;
    s.under_relaxed = relax < 1.0;
    const double mag = std::abs(s.m1_s);
    if (prev_mag >= 0.0 && std::abs(mag - prev_mag) <= rel_tol * mag) return s;
    prev_mag = mag;

    const double step = s.x_s - x;
    // Alternating, non-shrinking steps: the plain map is oscillating.
    if (relax == 1.0 && prev_step != 0.0 && step * prev_step < 0.0 &&
        std::abs(step) >= std::abs(prev_step)) {
      relax = 0.5;
    }
    prev_step = step;
    x += relax * step;
  }
  throw ConvergenceError("steady_state: no convergence after 1000 iterations", s);
}

DriftMatrix build_drift(const PhysicalParams& p, const SteadyState& ss) {
  const Detunings d = detunings(p, ss.x_s);
  const double dm1 = d.delta_m1_tilde + p.delta_B;
  const double G = ss.G_eff.real();

  DriftMatrix out;
  auto& A = out.entries;
  A(0, 0) = -p.kappa_c;  A(0, 1) = d.delta_c;   A(0, 3) = p.g1;     A(0, 5) = p.g2;
  A(1, 0) = -d.delta_c;  A(1, 1) = -p.kappa_c;  A(1, 2) = -p.g1;    A(1, 4) = -p.g2;
  A(2, 1) = p.g1;        A(2, 2) = -p.kappa_m1; A(2, 3) = dm1;      A(2, 5) = p.J;   A(2, 6) = -G;
  A(3, 0) = -p.g1;       A(3, 2) = -dm1;        A(3, 3) = -p.kappa_m1; A(3, 4) = -p.J;
  A(4, 1) = p.g2;        A(4, 3) = p.J;         A(4, 4) = -p.kappa_m2; A(4, 5) = d.delta_m2;
  A(5, 0) = -p.g2;       A(5, 2) = -p.J;        A(5, 4) = -d.delta_m2; A(5, 5) = -p.kappa_m2;
  A(6, 7) = p.omega_b;
  A(7, 3) = G;           A(7, 6) = -p.omega_b;  A(7, 7) = -p.gamma_b;
  return out;
}

DiffusionMatrix build_diffusion(const PhysicalParams& p) {
  const double T = p.temperature;
  const double nc = thermal_occupation(p.omega_c, T);
  const double n1 = thermal_occupation(p.omega_m1, T);
  const double n2 = thermal_occupation(p.omega_m2, T);
  const double nb = thermal_occupation(p.omega_b, T);

  DiffusionMatrix out;
  auto& F = out.entries;
  F(0, 0) = F(1, 1) = p.kappa_c * (2.0 * nc + 1.0);
  F(2, 2) = F(3, 3) = p.kappa_m1 * (2.0 * n1 + 1.0);
  F(4, 4) = F(5, 5) = p.kappa_m2 * (2.0 * n2 + 1.0);
  F(7, 7) = p.gamma_b * (2.0 * nb + 1.0);
  return out;
}

StabilityReport is_stable(const Eigen::MatrixXd& A) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(A, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw NumericalError("is_stable: eigen-decomposition failed");
  StabilityReport r;
  r.spectral_abscissa = es.eigenvalues().real().maxCoeff();
  r.tolerance = 1e-9 * A.cwiseAbs().maxCoeff();
  r.marginal = std::abs(r.spectral_abscissa) < r.tolerance;
  r.stable = r.spectral_abscissa < 0.0;
  return r;
}

StabilityReport is_stable(const DriftMatrix& A) { return is_stable(Eigen::MatrixXd(A.entries)); }

double rabi_frequency(double drive_field_tesla, double sphere_volume_m3, double spin_density) {
  if (!(sphere_volume_m3 > 0.0) || !(spin_density > 0.0)) {
    throw DomainError("rabi_frequency: volume and spin density must be > 0");
  }
  const double spins = spin_density * sphere_volume_m3;
  return std::sqrt(5.0 * spins) / 4.0 * constants::gyromagnetic * drive_field_tesla;
}

LinearizedSystem linearize(const PhysicalParams& p) {
  LinearizedSystem sys;
  sys.steady = steady_state(p);
  sys.drift = build_drift(p, sys.steady);
  sys.diffusion = build_diffusion(p);
  sys.stability = is_stable(sys.drift);
  return sys;
}

}  // namespace cmm
