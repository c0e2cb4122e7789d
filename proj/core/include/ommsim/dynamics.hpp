#pragma once

#include <array>
#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ommsim/model.hpp"

namespace ommsim {

inline constexpr int kNumModes = 5;
inline constexpr int kNumQuadratures = 2 * kNumModes;

/// Quadrature ordering shared by the drift, diffusion and covariance matrices.
inline constexpr std::array<std::string_view, kNumQuadratures> kQuadratureOrder{
    "x_a", "y_a", "x_c1", "y_c1", "x_c2", "y_c2", "q", "p", "x_m", "y_m"};

/// Zero-based quadrature indices.
namespace quad {
inline constexpr int x_a = 0, y_a = 1, x_c1 = 2, y_c1 = 3, x_c2 = 4, y_c2 = 5, q = 6, p = 7,
                     x_m = 8, y_m = 9;
}

/// Linearized drift A of du/dt = A u + n, rad/s.
struct DriftMatrix {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(kNumQuadratures, kNumQuadratures);
  /// Frequency used to render the matrix dimensionless before solving.
  double frequency_scale = 1.0;
};

/// Diagonal diffusion matrix, rad/s.
struct DiffusionMatrix {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(kNumQuadratures);
  Eigen::MatrixXd dense() const { return d.asDiagonal(); }
};

struct StabilityReport {
  std::vector<std::complex<double>> eigenvalues;
  double max_real_part = 0.0;
  bool stable = false;
  double margin = 0.0;  ///< -max_real_part
};

/// Drift matrix of the ten quadratures. Atom/cavity couplings and detunings
/// are placed exactly as published; the phase of each effective coupling
/// (configured angle plus the phase of the complex G) rotates its mode-side
/// entries between the x and y rows, and `params.convention.placement`
/// decides the momentum-row entries.
DriftMatrix build_drift(const SystemParams& params, const SemiclassicalState& semiclassics);

/// diag[k_a, k_a, k_c1, k_c1, k_c2, k_c2, 0, g_b(2N_b+1), k_m(2N_m+1), k_m(2N_m+1)].
DiffusionMatrix build_diffusion(const SystemParams& params);

/// Dense nonsymmetric eigenvalue problem. The matrix is balanced with a
/// power-of-two diagonal similarity, reduced to Hessenberg form and iterated
/// with Francis double-shift QR, capped at 100 n sweeps.
StabilityReport stability(const Eigen::MatrixXd& a);
inline StabilityReport stability(const DriftMatrix& a) { return stability(a.a); }

/// Power-of-two diagonal balancing (Parlett-Reinsch); returns D^-1 A D.
Eigen::MatrixXd balance(const Eigen::MatrixXd& a);

}  // namespace ommsim
