#include "ommsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ommsim/errors.hpp"

namespace ommsim {

namespace {

struct CouplingEntries {
  double mode_x;  // entry in the mode's x row, q column
  double mode_y;  // entry in the mode's y row, q column
  double p_x;     // entry in the p row, mode's x column
  double p_y;     // entry in the p row, mode's y column
};

// Mode-side column is sign * |G| (cos phi, sin phi). For a Hamiltonian
// coupling q (alpha x + beta y) the momentum row then reads (mode_y, -mode_x).
CouplingEntries place(double magnitude, double phase, double sign, CouplingPlacement placement,
                      double printed_p_x, double printed_p_y) {
  CouplingEntries e{};
  e.mode_x = sign * magnitude * std::cos(phase);
  e.mode_y = sign * magnitude * std::sin(phase);
  if (placement == CouplingPlacement::hamiltonian) {
    e.p_x = e.mode_y;
    e.p_y = -e.mode_x;
  } else {
    e.p_x = printed_p_x;
    e.p_y = printed_p_y;
  }
  return e;
}

}  // namespace

DriftMatrix build_drift(const SystemParams& p, const SemiclassicalState& s) {
  const double values[] = {p.delta_a,      p.delta_c1,      s.delta_c2_eff, s.delta_m_eff,
                           p.kappa_a,      p.kappa_c1,      p.kappa_c2,     p.kappa_m,
                           p.gamma_b,      p.omega_b,       p.g_n1,         p.g_n2,
                           s.g_c.real(),   s.g_c.imag(),    s.g_mb.real(),  s.g_mb.imag(),
                           p.convention.theta_c, p.convention.theta_m};
  for (double v : values)
    if (!std::isfinite(v)) throw DomainError("build_drift: non-finite input");

  using namespace quad;
  DriftMatrix out;
  out.frequency_scale = p.omega_b;
  auto& a = out.a;

  a(x_a, x_a) = -p.kappa_a;
  a(x_a, y_a) = p.delta_a;
  a(x_a, y_c1) = p.g_n1;
  a(x_a, y_c2) = p.g_n2;
  a(y_a, x_a) = -p.delta_a;
  a(y_a, y_a) = -p.kappa_a;
  a(y_a, x_c1) = -p.g_n1;
  a(y_a, x_c2) = -p.g_n2;

  a(x_c1, y_a) = p.g_n1;
  a(x_c1, x_c1) = -p.kappa_c1;
  a(x_c1, y_c1) = p.delta_c1;
  a(y_c1, x_a) = -p.g_n1;
  a(y_c1, x_c1) = -p.delta_c1;
  a(y_c1, y_c1) = -p.kappa_c1;

  a(x_c2, y_a) = p.g_n2;
  a(x_c2, x_c2) = -p.kappa_c2;
  a(x_c2, y_c2) = s.delta_c2_eff;
  a(y_c2, x_a) = -p.g_n2;
  a(y_c2, x_c2) = -s.delta_c2_eff;
  a(y_c2, y_c2) = -p.kappa_c2;

  a(q, quad::p) = p.omega_b;
  a(quad::p, q) = -p.omega_b;
  a(quad::p, quad::p) = -p.gamma_b;

  a(x_m, x_m) = -p.kappa_m;
  a(x_m, y_m) = s.delta_m_eff;
  a(y_m, x_m) = -s.delta_m_eff;
  a(y_m, y_m) = -p.kappa_m;

  const auto placement = p.convention.placement;
  const double gc = std::abs(s.g_c);
  const double gmb = std::abs(s.g_mb);
  const auto opto = place(gc, p.convention.theta_c + std::arg(s.g_c), +1.0, placement,
                          -gc, 0.0);
  const auto magno = place(gmb, p.convention.theta_m + std::arg(s.g_mb), -1.0, placement,
                           0.0, gmb);

  a(x_c2, q) = opto.mode_x;
  a(y_c2, q) = opto.mode_y;
  a(quad::p, x_c2) = opto.p_x;
  a(quad::p, y_c2) = opto.p_y;

  a(x_m, q) = magno.mode_x;
  a(y_m, q) = magno.mode_y;
  a(quad::p, x_m) = magno.p_x;
  a(quad::p, y_m) = magno.p_y;
  return out;
}

DiffusionMatrix build_diffusion(const SystemParams& p) {
  if (!(p.temperature >= 0.0)) throw DomainError("build_diffusion: T must be >= 0");
  if (!(p.kappa_a > 0.0 && p.kappa_c1 > 0.0 && p.kappa_c2 > 0.0 && p.kappa_m > 0.0 &&
        p.gamma_b > 0.0))
    throw DomainError("build_diffusion: rates must be > 0");
  const double n_b = thermal_occupation(p.omega_b, p.temperature);
  const double n_m = thermal_occupation(p.omega_m, p.temperature);

  DiffusionMatrix out;
  out.d << p.kappa_a, p.kappa_a, p.kappa_c1, p.kappa_c1, p.kappa_c2, p.kappa_c2, 0.0,
      p.gamma_b * (2.0 * n_b + 1.0), p.kappa_m * (2.0 * n_m + 1.0),
      p.kappa_m * (2.0 * n_m + 1.0);
  return out;
}

Eigen::MatrixXd balance(const Eigen::MatrixXd& input) {
  Eigen::MatrixXd a = input;
  const Eigen::Index n = a.rows();
  constexpr double radix = 2.0;
  constexpr double radix2 = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix2;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix2;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
  return a;
}

StabilityReport stability(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw DomainError("stability: matrix must be square and non-empty");
  if (!a.allFinite()) throw DomainError("stability: matrix has non-finite entries");

  const double scale = a.cwiseAbs().maxCoeff();
  const Eigen::MatrixXd scaled = scale > 0.0 ? Eigen::MatrixXd(a / scale) : a;
  const Eigen::MatrixXd balanced = balance(scaled);

  Eigen::EigenSolver<Eigen::MatrixXd> solver;
  solver.setMaxIterations(100 * static_cast<Eigen::Index>(a.rows()));
  solver.compute(balanced, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "stability: eigensolver did not converge within " << 100 * a.rows()
       << " QR sweeps (n = " << a.rows() << ", max|a_ij| = " << scale << ")";
    throw NumericalError(os.str());
  }

  StabilityReport report;
  report.max_real_part = -std::numeric_limits<double>::infinity();
  const auto& ev = solver.eigenvalues();
  report.eigenvalues.reserve(static_cast<std::size_t>(ev.size()));
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const std::complex<double> lambda = ev(i) * (scale > 0.0 ? scale : 1.0);
    report.eigenvalues.push_back(lambda);
    report.max_real_part = std::max(report.max_real_part, lambda.real());
  }
  report.stable = report.max_real_part < 0.0;
  report.margin = -report.max_real_part;
  return report;
}

}  // namespace ommsim
