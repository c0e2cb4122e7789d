#include "ommsim/steadystate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "ommsim/errors.hpp"

namespace ommsim {

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Rounding V to double already leaves a residual of order eps ||A|| ||V||.
constexpr double kRoundoffFactor = 8.0 * std::numeric_limits<double>::epsilon();

constexpr int kStackDim = 16;
using StackMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kStackDim, kStackDim>;

struct RelaxLimits {
  double dt, horizon, threshold, stall_window, stall_ceiling;
};

// RK4 on dV/dt = A V + V A^T + D in place. Returns with residual <= threshold,
// on a round-off plateau (stalled), or past the horizon.
template <typename M>
void rk4_relax(const M& a, const M& d, M& v, const RelaxLimits& lim, double& t, long& steps,
               double& residual, bool& stalled) {
  M av = a, k1 = a, k2 = a, k3 = a, k4 = a, w = a;
  auto rhs = [&](const M& x, M& k) {
    av.noalias() = a * x;
    k = av + av.transpose() + d;
  };
  const double dt = lim.dt;
  rhs(v, k1);
  residual = k1.norm();
  // Near marginal stability rounding noise in the slow mode keeps the
  // derivative above the target. Accept the plateau once it is small and has
  // not halved over several slow relaxation times.
  double checkpoint = residual, checkpoint_time = 0.0;
  while (residual > lim.threshold && t <= lim.horizon) {
    if (residual < 0.5 * checkpoint) {
      checkpoint = residual;
      checkpoint_time = t;
    } else if (t - checkpoint_time > lim.stall_window && residual <= lim.stall_ceiling) {
      stalled = true;
      return;
    }
    w = v + (0.5 * dt) * k1;
    rhs(w, k2);
    w = v + (0.5 * dt) * k2;
    rhs(w, k3);
    w = v + dt * k3;
    rhs(w, k4);
    v += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += dt;
    ++steps;
    rhs(v, k1);
    residual = k1.norm();
  }
}

void check_shapes(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d, const char* who) {
  if (a.rows() != a.cols() || d.rows() != d.cols() || a.rows() != d.rows() || a.rows() == 0)
    throw DomainError(std::string(who) + ": A and D must be square and of equal size");
  if (!a.allFinite() || !d.allFinite())
    throw DomainError(std::string(who) + ": non-finite input");
}

}  // namespace

CovarianceMatrix lyapunov_kronecker(const Eigen::MatrixXd& a_in, const Eigen::MatrixXd& d_in,
                                    const LyapunovOptions& options) {
  check_shapes(a_in, d_in, "lyapunov_kronecker");
  const Eigen::Index n = a_in.rows();
  double scale = options.frequency_scale;
  if (!(scale > 0.0)) scale = max_abs(a_in);
  if (!(scale > 0.0)) throw NumericalError("lyapunov_kronecker: A is identically zero");

  const Eigen::MatrixXd a = a_in / scale;
  const Eigen::MatrixXd d = d_in / scale;

  // Column-major vec: vec(A V) = (I (x) A) vec V, vec(V A^T) = (A (x) I) vec V.
  const Eigen::Index nn = n * n;
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(nn, nn);
  for (Eigen::Index j = 0; j < n; ++j) {
    k.block(j * n, j * n, n, n) += a;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double aji = a(j, i);
      if (aji != 0.0) k.block(j * n, i * n, n, n).diagonal().array() += aji;
    }
  }
  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(d.data(), nn);

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(k);
  // PartialPivLU never reports failure; a vanishing pivot shows up as a
  // non-finite or tiny reciprocal condition estimate.
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) {
    std::ostringstream os;
    os << "lyapunov_kronecker: Kronecker system is singular (rcond = " << rcond
       << "); drift is at or near marginal stability";
    throw NumericalError(os.str());
  }
  const Eigen::VectorXd x = lu.solve(rhs);
  Eigen::MatrixXd v = Eigen::Map<const Eigen::MatrixXd>(x.data(), n, n);
  if (!v.allFinite()) throw NumericalError("lyapunov_kronecker: non-finite solution");

  CovarianceMatrix out;
  const double vmax = max_abs(v);
  out.asymmetry = vmax > 0.0 ? max_abs(v - v.transpose()) / vmax : 0.0;
  out.asymmetry_warning = out.asymmetry > options.asymmetry_warning_level;
  out.v = 0.5 * (v + v.transpose());

  const double dnorm = d.norm();
  const double rnorm = (a * out.v + out.v * a.transpose() + d).norm();
  out.residual = dnorm > 0.0 ? rnorm / dnorm : rnorm;
  const double floor = kRoundoffFactor * a.norm() * out.v.norm();
  out.roundoff_floor = dnorm > 0.0 ? floor / dnorm : floor;
  return out;
}

CovarianceMatrix solve_lyapunov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d,
                                const LyapunovOptions& options) {
  check_shapes(a, d, "solve_lyapunov");
  const auto report = stability(a);
  if (!report.stable) {
    std::ostringstream os;
    os << "solve_lyapunov: drift matrix is not stable (max Re lambda = "
       << report.max_real_part << ")";
    throw PreconditionError(os.str());
  }
  auto out = lyapunov_kronecker(a, d, options);
  if (!(out.residual <= std::max(options.residual_tolerance, out.roundoff_floor))) {
    std::ostringstream os;
    os << "solve_lyapunov: relative residual " << out.residual << " exceeds "
       << options.residual_tolerance << " (round-off floor " << out.roundoff_floor << ")";
    throw NumericalError(os.str());
  }
  return out;
}

CovarianceMatrix solve_lyapunov(const DriftMatrix& a, const DiffusionMatrix& d) {
  LyapunovOptions options;
  options.frequency_scale = a.frequency_scale;
  return solve_lyapunov(a.a, d.dense(), options);
}

RelaxationResult integrate_to_steady_state(const Eigen::MatrixXd& a_in,
                                           const Eigen::MatrixXd& d_in,
                                           const Eigen::MatrixXd& v0,
                                           const RelaxationOptions& options) {
  check_shapes(a_in, d_in, "integrate_to_steady_state");
  if (v0.rows() != a_in.rows() || v0.cols() != a_in.cols())
    throw DomainError("integrate_to_steady_state: v0 has the wrong shape");

  const auto report = stability(a_in);
  if (!report.stable)
    throw PreconditionError("integrate_to_steady_state: drift matrix is not stable");

  double spectral_radius = 0.0;
  for (const auto& lambda : report.eigenvalues)
    spectral_radius = std::max(spectral_radius, std::abs(lambda));
  if (!(spectral_radius > 0.0))
    throw NumericalError("integrate_to_steady_state: zero spectral radius");

  // Work in units of 1/spectral_radius so the step is O(1).
  const double scale = spectral_radius;
  const Eigen::MatrixXd a = a_in / scale;
  const Eigen::MatrixXd d = d_in / scale;

  double dt = options.dt > 0.0 ? options.dt * scale : 0.05;
  if (dt > 0.1 + 1e-15)
    throw PreconditionError("integrate_to_steady_state: dt exceeds 0.1 / spectral radius");
  const double horizon = options.horizon_factor / (report.margin / scale);

  const double dnorm = d.norm();
  const double threshold = options.tolerance * (dnorm > 0.0 ? dnorm : 1.0);

  RelaxationResult out;
  const double stall_window = options.stall_window_factor / (report.margin / scale);
  const double stall_ceiling = options.stall_tolerance * (dnorm > 0.0 ? dnorm : 1.0);
  RelaxLimits limits{dt, horizon, threshold, stall_window, stall_ceiling};
  Eigen::MatrixXd v;
  double t = 0.0, residual = 0.0;
  long steps = 0;
  if (a.rows() == 10) {
    using M10 = Eigen::Matrix<double, 10, 10>;
    const M10 af = a, df = d;
    M10 vf = v0;
    rk4_relax(af, df, vf, limits, t, steps, residual, out.stalled);
    v = vf;
  } else if (a.rows() <= kStackDim) {
    const StackMatrix as = a, ds = d;
    StackMatrix vs = v0;
    rk4_relax(as, ds, vs, limits, t, steps, residual, out.stalled);
    v = vs;
  } else {
    v = v0;
    rk4_relax(a, d, v, limits, t, steps, residual, out.stalled);
  }
  if (residual > threshold && !out.stalled) {
    std::ostringstream os;
    os << "integrate_to_steady_state: no convergence within the horizon " << horizon / scale
       << " s (relative residual " << residual / (dnorm > 0 ? dnorm : 1.0) << ", " << steps
       << " steps)";
    throw NonConvergenceError(os.str(), residual / (dnorm > 0 ? dnorm : 1.0));
  }
  out.v = 0.5 * (v + v.transpose());
  out.time = t / scale;
  out.steps = steps;
  out.residual = residual / (dnorm > 0.0 ? dnorm : 1.0);
  return out;
}

Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

double uncertainty_min_eigenvalue(const Eigen::MatrixXd& v) {
  if (v.rows() != v.cols() || v.rows() % 2 != 0)
    throw DomainError("uncertainty_min_eigenvalue: need a square matrix of even size");
  const int modes = static_cast<int>(v.rows() / 2);
  Eigen::MatrixXcd h = v.cast<std::complex<double>>();
  h += std::complex<double>(0.0, 0.5) * symplectic_form(modes).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("uncertainty_min_eigenvalue: Hermitian eigensolver failed");
  return solver.eigenvalues().minCoeff();
}

}  // namespace ommsim
