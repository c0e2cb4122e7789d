#pragma once

#include <Eigen/Core>

#include "ommsim/dynamics.hpp"

namespace ommsim {

/// Steady-state quadrature covariance, vacuum variance 1/2.
struct CovarianceMatrix {
  Eigen::MatrixXd v;

  double residual = 0.0;    ///< ||A V + V A^T + D||_F / ||D||_F
  /// Smallest residual double precision can certify for this V,
  /// 8 eps ||A||_F ||V||_F / ||D||_F (scaled A and D).
  double roundoff_floor = 0.0;
  double asymmetry = 0.0;   ///< max|V - V^T| / max|V| before symmetrization
  bool asymmetry_warning = false;
};

struct LyapunovOptions {
  /// A and D are divided by this before solving; <= 0 selects max|a_ij|.
  double frequency_scale = 0.0;
  double residual_tolerance = 1e-10;
  double asymmetry_warning_level = 1e-9;
};

/// Solves A V + V A^T = -D by vectorization: (I (x) A + A (x) I) vec V = -vec D
/// with partially pivoted LU, then symmetrizes. Works for any n. Does not
/// check stability.
CovarianceMatrix lyapunov_kronecker(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d,
                                    const LyapunovOptions& options = {});

/// Steady-state covariance of the linearized dynamics. Throws
/// PreconditionError for an unstable drift and NumericalError when the
/// Kronecker system is singular or the residual exceeds both
/// `residual_tolerance` and the round-off floor. Near marginal stability V
/// grows large and the floor can sit above the tolerance; such solutions are
/// accepted and callers should check `residual > residual_tolerance`.
CovarianceMatrix solve_lyapunov(const DriftMatrix& a, const DiffusionMatrix& d);
CovarianceMatrix solve_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d,
                                const LyapunovOptions& options = {});

struct RelaxationOptions {
  double dt = 0.0;  ///< seconds; <= 0 selects 0.05 / spectral radius
  double tolerance = 1e-12;  ///< stop when ||dV/dt||_F <= tolerance * ||D||_F
  /// Round-off plateau: also stop once ||dV/dt||_F <= stall_tolerance * ||D||_F
  /// and has not halved for stall_window_factor / |max Re| seconds.
  double stall_tolerance = 1e-8;
  double stall_window_factor = 5.0;
  double horizon_factor = 50.0;   ///< give up after horizon_factor / |max Re lambda|
};

struct RelaxationResult {
  Eigen::MatrixXd v;
  double time = 0.0;
  long steps = 0;
  double residual = 0.0;  ///< final ||dV/dt||_F / ||D||_F
  bool stalled = false;   ///< stopped on the round-off plateau above `tolerance`
};

/// Classical RK4 on dV/dt = A V + V A^T + D from `v0` until the derivative
/// falls below tolerance. Independent of the Kronecker route.
RelaxationResult integrate_to_steady_state(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d,
                                           const Eigen::MatrixXd& v0,
                                           const RelaxationOptions& options = {});

/// Block-diagonal symplectic form, one [[0, 1], [-1, 0]] block per mode.
Eigen::MatrixXd symplectic_form(int modes);

/// Smallest eigenvalue of the Hermitian matrix V + (i/2) Omega. Non-negative
/// for every state allowed by the uncertainty principle.
double uncertainty_min_eigenvalue(const Eigen::MatrixXd& v);

}  // namespace ommsim
