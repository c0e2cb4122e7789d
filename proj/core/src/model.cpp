#include "ommsim/model.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "ommsim/errors.hpp"
#include "ommsim/units.hpp"

namespace ommsim {

namespace {

constexpr double kDegenerateFloor = 1e-30;
constexpr double kClosedFormTolerance = 1e-9;
constexpr int kMaxSelfConsistentIterations = 500;
constexpr double kSelfConsistentTolerance = 1e-13;

void require(bool ok, const char* invariant) {
  if (!ok) throw DomainError(std::string("invalid parameters: ") + invariant);
}

bool finite_all(std::initializer_list<double> xs) {
  for (double x : xs)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

SystemParams default_params() {
  using units::angular;
  SystemParams p;
  p.omega_m = angular(10.0e9);
  p.omega_b = angular(40.0e6);
  p.delta_a = -0.95 * p.omega_b;
  p.delta_c1 = -0.8 * p.omega_b;
  p.delta_c2 = -0.8 * p.omega_b;
  p.delta_m = 1.0 * p.omega_b;
  p.kappa_a = angular(1.0e6);
  p.kappa_c1 = angular(2.0e6);
  p.kappa_c2 = angular(2.0e6);
  p.kappa_m = angular(1.0e6);
  p.gamma_b = angular(1.0e2);
  p.g_n1 = angular(4.0e6);
  p.g_n2 = angular(8.0e6);
  p.g_c = angular(1.0e3);
  p.g_m = angular(20.0);
  p.coupling_mode = CouplingMode::direct;
  p.g_c_direct = angular(8.0e6);
  p.g_mb_direct = angular(2.5e6);
  p.laser_power = 4.4e-3;
  p.wavelength = 1064e-9;
  p.microwave_power = 1.44e-3;
  p.b0 = 1.0e-3;
  p.yig_volume = 10.0e-18;
  p.spin_density = 4.22e27;
  p.temperature = 10.0e-3;
  return p;
}

void validate(const SystemParams& p) {
  require(finite_all({p.omega_m, p.omega_b, p.delta_a, p.delta_c1, p.delta_c2, p.delta_m,
                      p.kappa_a, p.kappa_c1, p.kappa_c2, p.kappa_m, p.gamma_b, p.g_n1,
                      p.g_n2, p.g_c, p.g_m, p.g_c_direct, p.g_mb_direct, p.laser_power,
                      p.wavelength, p.microwave_power, p.b0, p.yig_volume, p.spin_density,
                      p.temperature, p.convention.theta_c, p.convention.theta_m}),
          "all values must be finite");
  require(p.omega_b > 0.0, "omega_b > 0");
  require(p.omega_m > 0.0, "omega_m > 0");
  require(p.kappa_a > 0.0, "kappa_a > 0 (decay rates strictly positive)");
  require(p.kappa_c1 > 0.0, "kappa_c1 > 0 (decay rates strictly positive)");
  require(p.kappa_c2 > 0.0, "kappa_c2 > 0 (decay rates strictly positive)");
  require(p.kappa_m > 0.0, "kappa_m > 0 (decay rates strictly positive)");
  require(p.gamma_b > 0.0, "gamma_b > 0 (damping rate strictly positive)");
  require(p.temperature >= 0.0, "T >= 0");
  if (p.coupling_mode == CouplingMode::direct) {
    require(p.g_c_direct >= 0.0, "direct G_c >= 0");
    require(p.g_mb_direct >= 0.0, "direct G_mb >= 0");
  } else {
    require(p.laser_power >= 0.0, "laser power >= 0");
    require(p.wavelength > 0.0, "wavelength > 0");
    require(p.b0 >= 0.0, "B0 >= 0");
    require(p.yig_volume > 0.0, "YIG volume > 0");
    require(p.spin_density > 0.0, "spin density > 0");
  }
}

std::vector<std::string> advisories(const SystemParams& p) {
  std::vector<std::string> out;
  if (p.gamma_b > 0.0 && p.quality_factor() < 100.0) {
    std::ostringstream os;
    os << "mechanical quality factor Q_b = " << p.quality_factor()
       << " < 100; the Markovian Brownian-noise model is questionable";
    out.push_back(os.str());
  }
  return out;
}

double thermal_occupation(double omega, double temperature) {
  if (!(omega > 0.0)) throw DomainError("thermal_occupation: omega must be > 0");
  if (!(temperature >= 0.0)) throw DomainError("thermal_occupation: T must be >= 0");
  if (temperature == 0.0) return 0.0;
  const double x = units::kHbar * omega / (units::kBoltzmann * temperature);
  return 1.0 / std::expm1(x);
}

double rabi_frequency(double b0, double yig_volume, double spin_density) {
  if (!(b0 >= 0.0) || !(yig_volume > 0.0) || !(spin_density > 0.0))
    throw DomainError("rabi_frequency: B0 >= 0, V > 0 and rho > 0 required");
  const double spins = spin_density * yig_volume;
  return std::sqrt(5.0) / 4.0 * units::kGyromagneticRatio * std::sqrt(spins) * b0;
}

double laser_drive_strength(double laser_power, double kappa_c, double wavelength) {
  if (!(laser_power >= 0.0) || !(kappa_c > 0.0) || !(wavelength > 0.0))
    throw DomainError("laser_drive_strength: P_L >= 0, kappa_c > 0 and lambda > 0 required");
  const double omega_l = units::kTwoPi * units::kSpeedOfLight / wavelength;
  return std::sqrt(2.0 * laser_power * kappa_c / (units::kHbar * omega_l));
}

Complex magnon_average(double rabi, double kappa_m, double detuning) {
  if (!(kappa_m > 0.0)) throw DomainError("magnon_average: kappa_m must be > 0");
  return rabi / Complex(kappa_m, detuning);
}

Complex cavity2_closed_form(double drive, const CavityCouplings& cc, double frequency_scale) {
  if (!(cc.kappa_a > 0.0) || !(cc.kappa_c1 > 0.0) || !(cc.kappa_c2 > 0.0))
    throw DomainError("cavity2_closed_form: decay rates must be > 0");
  const Complex i(0.0, 1.0);
  const Complex atom(cc.delta_a, -cc.kappa_a);
  const Complex cav1(cc.delta_c1, -cc.kappa_c1);
  const Complex cav2(cc.delta_c2, -cc.kappa_c2);
  const double g11 = cc.g_n1 * cc.g_n1;
  const double g12 = cc.g_n1 * cc.g_n2;
  const double g22 = cc.g_n2 * cc.g_n2;

  const Complex numerator = i * drive * (g11 - g12 + atom * cav1);
  const Complex denominator = g22 * cav1 + (g11 + atom * cav1) * cav2;
  const double s3 = frequency_scale * frequency_scale * frequency_scale;
  if (std::abs(denominator) / s3 < kDegenerateFloor)
    throw DegenerateOperatingPoint("cavity2_closed_form: singular denominator");
  return numerator / denominator;
}

CavityAmplitudes cavity_steady_state(double drive, const CavityCouplings& cc,
                                     double frequency_scale) {
  if (!(cc.kappa_a > 0.0) || !(cc.kappa_c1 > 0.0) || !(cc.kappa_c2 > 0.0))
    throw DomainError("cavity_steady_state: decay rates must be > 0");
  const Complex i(0.0, 1.0);
  const double s = frequency_scale;
  // 0 = M [a, c1, c2]^T + [0, E, E]^T, rows from the a, c1, c2 equations.
  Eigen::Matrix3cd m;
  m << -(i * cc.delta_a + cc.kappa_a) / s, -i * cc.g_n1 / s, -i * cc.g_n2 / s,
      -i * cc.g_n1 / s, -(i * cc.delta_c1 + cc.kappa_c1) / s, 0.0,
      -i * cc.g_n2 / s, 0.0, -(i * cc.delta_c2 + cc.kappa_c2) / s;
  Eigen::Vector3cd rhs(0.0, -drive / s, -drive / s);

  if (std::abs(m.determinant()) < kDegenerateFloor)
    throw DegenerateOperatingPoint("cavity_steady_state: singular steady-state system");
  const Eigen::Vector3cd x = m.partialPivLu().solve(rhs);
  return {x(0), x(1), x(2)};
}

double mechanical_displacement(double g_c, double g_m, Complex c2_avg, Complex m_avg,
                               double omega_b) {
  if (!(omega_b > 0.0)) throw DomainError("mechanical_displacement: omega_b must be > 0");
  return (g_c * std::norm(c2_avg) - g_m * std::norm(m_avg)) / omega_b;
}

EffectiveCouplings effective_couplings(double g_c, double g_m, Complex c2_avg,
                                       Complex m_avg) {
  const Complex i_sqrt2(0.0, std::sqrt(2.0));
  return {i_sqrt2 * g_c * c2_avg, i_sqrt2 * g_m * m_avg};
}

SemiclassicalState solve_semiclassics(const SystemParams& p) {
  validate(p);
  SemiclassicalState s;
  s.mode = p.coupling_mode;

  if (p.coupling_mode == CouplingMode::direct) {
    s.delta_c2_eff = p.delta_c2;
    s.delta_m_eff = p.delta_m;
    s.g_c = Complex(p.g_c_direct, 0.0);
    s.g_mb = Complex(p.g_mb_direct, 0.0);
    return s;
  }

  s.drive = laser_drive_strength(p.laser_power, p.kappa_c2, p.wavelength);
  s.rabi = rabi_frequency(p.b0, p.yig_volume, p.spin_density);

  CavityCouplings cc{p.g_n1, p.g_n2, p.delta_a, p.kappa_a, p.delta_c1, p.kappa_c1,
                     p.delta_c2, p.kappa_c2};

  // <q> shifts both detunings, which feed back into |<c2>| and |<m>|.
  double q = 0.0;
  bool converged = false;
  for (int it = 1; it <= kMaxSelfConsistentIterations; ++it) {
    s.delta_c2_eff = p.delta_c2 - p.g_c * q;
    s.delta_m_eff = p.delta_m + p.g_m * q;
    cc.delta_c2 = s.delta_c2_eff;

    const Complex linear = cavity_steady_state(s.drive, cc, p.omega_b).cavity2;
    const Complex closed = cavity2_closed_form(s.drive, cc, p.omega_b);
    const double scale = std::max(std::abs(linear), std::abs(closed));
    s.closed_form_relative_gap = scale > 0.0 ? std::abs(linear - closed) / scale : 0.0;
    s.closed_form_discrepancy = s.closed_form_relative_gap > kClosedFormTolerance;
    s.c2_avg = p.cavity_solver == CavitySolver::linear_solve ? linear : closed;

    const double magnon_detuning = p.magnon_uses_cavity2_detuning ? p.delta_c2 : s.delta_m_eff;
    s.m_avg = magnon_average(s.rabi, p.kappa_m, magnon_detuning);

    const double q_next = mechanical_displacement(p.g_c, p.g_m, s.c2_avg, s.m_avg, p.omega_b);
    s.iterations = it;
    const double step = std::abs(q_next - q);
    q = q_next;
    if (step <= kSelfConsistentTolerance * std::max(1.0, std::abs(q))) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw NonConvergenceError("solve_semiclassics: mechanical displacement did not settle",
                              q);

  s.q_avg = q;
  s.delta_c2_eff = p.delta_c2 - p.g_c * q;
  s.delta_m_eff = p.delta_m + p.g_m * q;
  const auto couplings = effective_couplings(p.g_c, p.g_m, s.c2_avg, s.m_avg);
  s.g_c = couplings.g_c;
  s.g_mb = couplings.g_mb;
  return s;
}

}  // namespace ommsim
