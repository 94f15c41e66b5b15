#pragma once

// Four-mode cavity magnomechanics: cavity c, magnons m1/m2, phonon b.
// Everything here is in rad/s unless the name says otherwise.

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "cmm/error.hpp"

namespace cmm {

using complex = std::complex<double>;
using Matrix8d = Eigen::Matrix<double, 8, 8>;

namespace constants {
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double boltzmann = 1.380649e-23;       // J / K
inline constexpr double two_pi = 6.283185307179586477;
inline constexpr double gyromagnetic = two_pi * 28e9;   // rad / (s T)
inline constexpr double yig_spin_density = 4.22e27;     // 1 / m^3
}  // namespace constants

struct PhysicalParams {
  double omega_c = 0.0;
  double omega_m1 = 0.0;
  double omega_m2 = 0.0;
  double omega_b = 0.0;
  double omega_drive = 0.0;
  double delta_B = 0.0;  // Barnett shift of m1, signed
  double kappa_c = 0.0;
  double kappa_m1 = 0.0;
  double kappa_m2 = 0.0;
  double gamma_b = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
  double J = 0.0;
  double G0 = 0.0;
  // Exactly one of these selects how the magnomechanical coupling G is found.
  std::optional<double> drive_amplitude;  // Rabi frequency Psi
  std::optional<double> G_direct;         // effective coupling, bypasses steady state
  double temperature = 0.0;  // kelvin

  // Throws ConfigError naming the first violated invariant.
  void validate() const;
};

struct Detunings {
  double delta_c = 0.0;
  double delta_m1 = 0.0;
  double delta_m2 = 0.0;
  double delta_m1_tilde = 0.0;  // delta_m1 + G0 * x_s
};

Detunings detunings(const PhysicalParams& p, double x_s = 0.0);

struct SteadyState {
  complex c_s{};
  complex m1_s{};
  complex m2_s{};
  double x_s = 0.0;
  double y_s = 0.0;
  complex G_eff{};
  int iterations = 0;
  bool under_relaxed = false;

  // |Im G| / |G| above 1e-6 means the purely-imaginary amplitude assumption
  // is visibly broken; the drift matrix still uses Re(G).
  bool g_has_imaginary_part() const;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, SteadyState last)
      : NumericalError(what), last_(last) {}
  const SteadyState& last_iterate() const noexcept { return last_; }

 private:
  SteadyState last_;
};

// Quadrature ordering (X_c, Y_c, X_m1, Y_m1, X_m2, Y_m2, x, y).
struct DriftMatrix {
  Matrix8d entries = Matrix8d::Zero();
};

struct DiffusionMatrix {
  Matrix8d entries = Matrix8d::Zero();
};

struct StabilityReport {
  bool stable = false;
  bool marginal = false;
  double spectral_abscissa = 0.0;
  double tolerance = 0.0;  // marginal band half-width, 1e-9 * max|A_ij|
};

/// Bose-Einstein occupation [exp(hbar w / kB T) - 1]^-1, with the T = 0 limit
/// returned as exactly 0.
double thermal_occupation(double omega, double temperature);

/// Semiclassical amplitudes from the large-detuning closed forms, iterated
/// to self-consistency in the phonon displacement x_s (which shifts the m1
/// detuning). In G_direct mode the amplitudes are zero and G_eff = G_direct.
SteadyState steady_state(const PhysicalParams& p);

/// Right-hand sides of the closed-form amplitude expressions evaluated at a
/// given phonon displacement. Exposed so the fixed point can be checked.
SteadyState steady_state_map(const PhysicalParams& p, double x_s);

DriftMatrix build_drift(const PhysicalParams& p, const SteadyState& ss);
DiffusionMatrix build_diffusion(const PhysicalParams& p);
StabilityReport is_stable(const DriftMatrix& A);
StabilityReport is_stable(const Eigen::MatrixXd& A);

/// Psi = sqrt(5 N) / 4 * Gamma * B0 with N = rho V spins.
double rabi_frequency(double drive_field_tesla, double sphere_volume_m3,
                      double spin_density = constants::yig_spin_density);

// Everything downstream of the parameters for one configuration.
struct LinearizedSystem {
  SteadyState steady;
  DriftMatrix drift;
  DiffusionMatrix diffusion;
  StabilityReport stability;
};

LinearizedSystem linearize(const PhysicalParams& p);

}  // namespace cmm
