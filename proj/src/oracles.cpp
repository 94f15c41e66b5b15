#include "cmm/oracles.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <cmath>
#include <random>

#include "cmm/error.hpp"

namespace cmm::oracles {

namespace {

using Vector7d = Eigen::Matrix<double, 7, 1>;
using Matrix7d = Eigen::Matrix<double, 7, 7>;

struct Amplitudes {
  complex c, m1, m2;
  double x;
};

Amplitudes unpack(const Vector7d& u) {
  return {{u[0], u[1]}, {u[2], u[3]}, {u[4], u[5]}, u[6]};
}

// Writes the real 2x2 block of z -> a z at (row, col).
void put_complex(Matrix7d& jac, int row, int col, complex a) {
  jac(row, col) += a.real();
  jac(row, col + 1) += -a.imag();
  jac(row + 1, col) += a.imag();
  jac(row + 1, col + 1) += a.real();
}

struct LangevinMeanField {
  const PhysicalParams& p;
  Detunings d = detunings(p);
  complex I{0.0, 1.0};
  double psi = p.drive_amplitude.value_or(0.0);

  complex a_c() const { return -(I * d.delta_c + p.kappa_c); }
  complex a_m1(double x) const { return -(I * (d.delta_m1 + p.delta_B + p.G0 * x) + p.kappa_m1); }
  complex a_m2() const { return -(I * d.delta_m2 + p.kappa_m2); }

  Vector7d residual(const Vector7d& u) const {
    const Amplitudes s = unpack(u);
    const complex rc = a_c() * s.c - I * p.g1 * s.m1 - I * p.g2 * s.m2;
    const complex r1 = a_m1(s.x) * s.m1 - I * p.g1 * s.c - I * p.J * s.m2 + psi;
    const complex r2 = a_m2() * s.m2 - I * p.g2 * s.c - I * p.J * s.m1;
    const double rx = -p.omega_b * s.x - p.G0 * std::norm(s.m1);
    Vector7d r;
    r << rc.real(), rc.imag(), r1.real(), r1.imag(), r2.real(), r2.imag(), rx;
    return r;
  }

  Matrix7d jacobian(const Vector7d& u) const {
    const Amplitudes s = unpack(u);
    Matrix7d jac = Matrix7d::Zero();
    put_complex(jac, 0, 0, a_c());
    put_complex(jac, 0, 2, -I * p.g1);
    put_complex(jac, 0, 4, -I * p.g2);
    put_complex(jac, 2, 0, -I * p.g1);
    put_complex(jac, 2, 2, a_m1(s.x));
    put_complex(jac, 2, 4, -I * p.J);
    const complex dx = -I * p.G0 * s.m1;
    jac(2, 6) = dx.real();
    jac(3, 6) = dx.imag();
    put_complex(jac, 4, 0, -I * p.g2);
    put_complex(jac, 4, 2, -I * p.J);
    put_complex(jac, 4, 4, a_m2());
    jac(6, 2) = -2.0 * p.G0 * s.m1.real();
    jac(6, 3) = -2.0 * p.G0 * s.m1.imag();
    jac(6, 6) = -p.omega_b;
    return jac;
  }
};

}  // namespace

SteadyState steady_state_oracle(const PhysicalParams& p) {
  p.validate();
  if (!p.drive_amplitude) throw DomainError("steady_state_oracle: needs drive_amplitude");
  const LangevinMeanField f{p};

  // Start from the x = 0 solution of the (then linear) amplitude equations.
  Vector7d u = Vector7d::Zero();
  {
    Vector7d r0 = f.residual(u);
    Matrix7d j0 = f.jacobian(u);
    j0.row(6).setZero();
    j0(6, 6) = 1.0;
    r0[6] = 0.0;
    u -= j0.fullPivLu().solve(r0);
  }

  for (int it = 0; it < 200; ++it) {
    const Vector7d r = f.residual(u);
    const Vector7d step = f.jacobian(u).fullPivLu().solve(r);
    if (!step.allFinite()) throw OracleFailure("steady_state_oracle: singular Jacobian");
    // Backtrack on the residual norm.
    double t = 1.0;
    Vector7d trial = u - step;
    while (f.residual(trial).norm() > r.norm() && t > 1e-6) {
      t *= 0.5;
      trial = u - t * step;
    }
    u = trial;
    if (step.norm() * t <= 1e-14 * std::max(u.norm(), 1e-300)) break;
    if (it == 199) throw OracleFailure("steady_state_oracle: Newton did not converge");
  }

  const Amplitudes s = unpack(u);
  SteadyState out;
  out.c_s = s.c;
  out.m1_s = s.m1;
  out.m2_s = s.m2;
  out.x_s = s.x;
  out.G_eff = complex{0.0, std::sqrt(2.0)} * p.G0 * s.m1;
  return out;
}

Eigen::MatrixXd lyapunov_integral_oracle(const Eigen::MatrixXd& A, const Eigen::MatrixXd& F,
                                         double horizon, double tol) {
  using Gauss = boost::math::quadrature::gauss<double, 10>;
  const Eigen::Index n = A.rows();
  const double norm = A.cwiseAbs().rowwise().sum().maxCoeff();
  if (!(norm > 0.0)) throw AccuracyError("lyapunov_integral_oracle: zero drift matrix");
  const double h = 0.5 / norm;

  // Q = int_0^h exp(A t) F exp(A t)^T dt over one panel; nodes come in
  // symmetric pairs about the midpoint.
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  const auto& nodes = Gauss::abscissa();
  const auto& weights = Gauss::weights();
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    for (double sign : {-1.0, 1.0}) {
      if (nodes[k] == 0.0 && sign < 0.0) continue;
      const double t = 0.5 * h * (1.0 + sign * nodes[k]);
      const Eigen::MatrixXd P = (A * t).exp();
      C += 0.5 * h * weights[k] * P * F * P.transpose();
    }
  }

  Eigen::MatrixXd step = (A * h).exp();
  double covered = h;
  while (true) {
    const Eigen::MatrixXd tail = step * C * step.transpose();
    C += tail;
    covered *= 2.0;
    step = (step * step).eval();
    if (tail.cwiseAbs().maxCoeff() <= tol * C.cwiseAbs().maxCoeff()) break;
    if (covered > horizon) {
      throw AccuracyError("lyapunov_integral_oracle: horizon too short for requested tolerance");
    }
  }
  return 0.5 * (C + C.transpose());
}

RandomSystem random_stable_system(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  RandomSystem sys;
  sys.A = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return normal(rng); });
  const double abscissa = is_stable(sys.A).spectral_abscissa;
  const double margin = 0.1 + 0.9 * uniform(rng);
  sys.A -= (abscissa + margin) * Eigen::MatrixXd::Identity(n, n);
  sys.F = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) sys.F(i, i) = 2.0 * uniform(rng);
  return sys;
}

}  // namespace cmm::oracles
