#include "ommsim/selftest.hpp"

#include <cmath>
#include <numbers>

#include "ommsim/dynamics.hpp"
#include "ommsim/entanglement.hpp"
#include "ommsim/model.hpp"
#include "ommsim/steadystate.hpp"
#include "ommsim/units.hpp"

namespace ommsim {

namespace {

FixtureResult make(std::string name, double deviation, double tolerance) {
  return {std::move(name), deviation <= tolerance, deviation, tolerance};
}

Matrix4 two_mode_squeezed(double r) {
  const double c = std::cosh(2.0 * r) / 2.0;
  const double s = std::sinh(2.0 * r) / 2.0;
  Matrix4 v = Matrix4::Zero();
  v.diagonal().setConstant(c);
  v(0, 2) = v(2, 0) = s;
  v(1, 3) = v(3, 1) = -s;
  return v;
}

SystemParams uncoupled() {
  SystemParams p = default_params();
  p.g_n1 = p.g_n2 = 0.0;
  p.g_c_direct = p.g_mb_direct = 0.0;
  return p;
}

}  // namespace

std::vector<FixtureResult> run_analytic_fixtures() {
  std::vector<FixtureResult> out;

  {
    const double kappa = 1.3;
    const double delta = -0.7;
    Eigen::MatrixXd a(2, 2);
    a << -kappa, delta, -delta, -kappa;
    const Eigen::MatrixXd d = kappa * Eigen::MatrixXd::Identity(2, 2);
    const auto v = solve_lyapunov(a, d).v;
    const double dev = (v - 0.5 * Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff();
    out.push_back(make("passive cavity relaxes to vacuum (Lyapunov)", dev, 1e-12));

    RelaxationOptions opts;
    const auto relaxed =
        integrate_to_steady_state(a, d, 2.0 * Eigen::MatrixXd::Identity(2, 2), opts);
    const double dev_rk4 =
        (relaxed.v - 0.5 * Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff();
    out.push_back(make("passive cavity relaxes to vacuum (RK4 from 2I)", dev_rk4, 1e-10));
  }

  {
    const SystemParams p = uncoupled();
    const auto s = solve_semiclassics(p);
    const auto v = solve_lyapunov(build_drift(p, s), build_diffusion(p)).v;
    const double nb = thermal_occupation(p.omega_b, p.temperature);
    Eigen::MatrixXd expected = 0.5 * Eigen::MatrixXd::Identity(kNumQuadratures, kNumQuadratures);
    expected(quad::q, quad::q) = expected(quad::p, quad::p) = nb + 0.5;
    double dev = 0.0;
    for (int i = 0; i < kNumQuadratures; ++i)
      for (int j = 0; j < kNumQuadratures; ++j) {
        const double scale = std::max(std::abs(expected(i, j)), 1.0);
        dev = std::max(dev, std::abs(v(i, j) - expected(i, j)) / scale);
      }
    out.push_back(make("uncoupled five-mode system: vacuum + thermal phonon", dev, 1e-9));
  }

  for (double r : {0.1, 0.5, 1.0}) {
    const double dev = std::abs(log_negativity(two_mode_squeezed(r)) - 2.0 * r);
    out.push_back(make("two-mode squeezed vacuum E_N = 2r, r = " + std::to_string(r), dev, 1e-9));
  }
  out.push_back(make("vacuum E_N = 0", log_negativity(0.5 * Matrix4::Identity()), 0.0));

  {
    const double temperature = 0.05;
    const double omega = units::kBoltzmann * temperature * std::numbers::ln2 / units::kHbar;
    out.push_back(
        make("Bose factor equals 1 at hbar w = k_B T ln 2",
             std::abs(thermal_occupation(omega, temperature) - 1.0), 1e-12));
  }
  return out;
}

}  // namespace ommsim
