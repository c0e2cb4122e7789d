#pragma once

/**
 * @file   model.hpp
 * @brief  Physical parameters and the semiclassical steady state of the
 *         five-mode opto-magnomechanical system.
 *
 * The system couples an atomic ensemble (a) to two optical cavities (c1, c2)
 * through beam-splitter interactions, cavity c2 to the mechanical mode (b)
 * of a YIG crystal through radiation pressure, and the mechanical mode to the
 * Kittel magnon (m) through magnetostriction.
 *
 * Every frequency held by `SystemParams` is an angular frequency in rad/s.
 * Conversion from the Hz values found in configuration files happens once, in
 * the config loader.
 */

#include <complex>
#include <string>
#include <vector>

namespace ommsim {

using Complex = std::complex<double>;

/// How the effective couplings G_c and G_mb are obtained.
enum class CouplingMode {
  direct,   ///< G_c, G_mb and the detunings are taken as configured numbers.
  derived,  ///< Computed from drive powers through the steady-state amplitudes.
};

/// Route used for the cavity-2 steady-state amplitude in derived mode.
enum class CavitySolver {
  linear_solve,  ///< 3x3 complex steady state of the atom/cavity equations.
  closed_form,   ///< The printed closed-form expression, kept verbatim.
};

/// Where the radiation-pressure and magnetostrictive couplings land in the
/// drift matrix.
enum class CouplingPlacement {
  /// Momentum-row entries follow from the mode-side entries so the linear
  /// dynamics derives from a Hamiltonian (the default).
  hamiltonian,
  /// Momentum-row entries exactly as in the published drift matrix,
  /// regardless of the mode-side phase.
  printed,
};

/// Phase convention knobs for the drift matrix. With `theta_c = theta_m = 0`
/// the mode-side entries sit where the published matrix puts them.
struct DriftConvention {
  CouplingPlacement placement = CouplingPlacement::hamiltonian;
  double theta_c = 0.0;  ///< rad, rotates G_c between the x_c2 / y_c2 rows
  double theta_m = 0.0;  ///< rad, rotates G_mb between the x_m / y_m rows
};

/// One operating point. Frequencies and rates in rad/s, SI otherwise.
struct SystemParams {
  double omega_m = 0.0;  ///< magnon resonance
  double omega_b = 0.0;  ///< mechanical resonance

  double delta_a = 0.0;   ///< atom detuning from the laser
  double delta_c1 = 0.0;  ///< cavity-1 detuning from the laser
  double delta_c2 = 0.0;  ///< cavity-2 detuning from the laser (bare)
  double delta_m = 0.0;   ///< magnon detuning from the microwave drive (bare)

  double kappa_a = 0.0;
  double kappa_c1 = 0.0;
  double kappa_c2 = 0.0;
  double kappa_m = 0.0;
  double gamma_b = 0.0;

  double g_n1 = 0.0;  ///< atom-cavity-1 coupling
  double g_n2 = 0.0;  ///< atom-cavity-2 coupling
  double g_c = 0.0;   ///< bare optomechanical coupling
  double g_m = 0.0;   ///< bare magnomechanical coupling

  CouplingMode coupling_mode = CouplingMode::direct;
  double g_c_direct = 0.0;   ///< effective optomechanical coupling, direct mode
  double g_mb_direct = 0.0;  ///< effective magnomechanical coupling, direct mode

  double laser_power = 0.0;      ///< W
  double wavelength = 0.0;       ///< m
  double microwave_power = 0.0;  ///< W, informational only
  double b0 = 0.0;               ///< T, microwave drive field amplitude
  double yig_volume = 0.0;       ///< m^3
  double spin_density = 0.0;     ///< m^-3

  double temperature = 0.0;  ///< K

  CavitySolver cavity_solver = CavitySolver::linear_solve;
  bool magnon_uses_cavity2_detuning = false;  ///< use the bare cavity-2 detuning in <m>
  DriftConvention convention{};

  double quality_factor() const { return omega_b / gamma_b; }
};

/// The published parameter set: omega_m/2pi = 10 GHz, omega_b/2pi = 40 MHz,
/// gamma_b/2pi = 100 Hz, kappa_a = kappa_m = 2pi x 1 MHz, kappa_c1 = kappa_c2
/// = 2pi x 2 MHz, g_N1/2pi = 4 MHz, g_N2/2pi = 8 MHz, G_mb/2pi = 2.5 MHz,
/// G_c/2pi = 8 MHz, Delta_m = omega_b, 1064 nm, P_L = 4.4 mW, T = 10 mK,
/// Delta_c2 = Delta_c1 = -0.8 omega_b, Delta_a = -0.95 omega_b.
SystemParams default_params();

/// Throws DomainError naming the violated invariant.
void validate(const SystemParams& params);

/// Non-fatal remarks about an operating point (e.g. low mechanical Q).
std::vector<std::string> advisories(const SystemParams& params);

/// Bose-Einstein occupation [exp(hbar omega / k_B T) - 1]^-1; exactly 0 at T = 0.
double thermal_occupation(double omega, double temperature);

/// Omega = (sqrt5 / 4) gamma sqrt(rho V) B0, in rad/s.
double rabi_frequency(double b0, double yig_volume, double spin_density);

/// E = sqrt(2 P_L kappa_c / (hbar omega_L)) with omega_L = 2 pi c / lambda_L.
double laser_drive_strength(double laser_power, double kappa_c, double wavelength);

/// <m> = Omega / (kappa_m + i Delta), Delta being the effective magnon
/// detuning (or the bare cavity-2 detuning when reproducing the printed form).
Complex magnon_average(double rabi, double kappa_m, double detuning);

/// Parameters entering the atom/cavity steady state.
struct CavityCouplings {
  double g_n1 = 0.0;
  double g_n2 = 0.0;
  double delta_a = 0.0;
  double kappa_a = 0.0;
  double delta_c1 = 0.0;
  double kappa_c1 = 0.0;
  double delta_c2 = 0.0;  ///< effective cavity-2 detuning
  double kappa_c2 = 0.0;
};

/// Closed-form cavity-2 amplitude as published. Throws
/// DegenerateOperatingPoint when |denominator| < 1e-30 (in units of omega_b^3
/// when a frequency scale is given, raw otherwise).
Complex cavity2_closed_form(double drive, const CavityCouplings& cc,
                            double frequency_scale = 1.0);

struct CavityAmplitudes {
  Complex atom;
  Complex cavity1;
  Complex cavity2;
};

/// Steady state of the linear atom/cavity equations with both cavities driven
/// at rate `drive`.
CavityAmplitudes cavity_steady_state(double drive, const CavityCouplings& cc,
                                     double frequency_scale = 1.0);

/// <q> = (g_c |<c2>|^2 - g_m |<m>|^2) / omega_b.
double mechanical_displacement(double g_c, double g_m, Complex c2_avg, Complex m_avg,
                               double omega_b);

struct EffectiveCouplings {
  Complex g_c;   ///< G_c
  Complex g_mb;  ///< G_mb
};

/// G_c = i sqrt2 g_c <c2>, G_mb = i sqrt2 g_m <m>.
EffectiveCouplings effective_couplings(double g_c, double g_m, Complex c2_avg,
                                       Complex m_avg);

struct SemiclassicalState {
  CouplingMode mode = CouplingMode::direct;
  Complex m_avg{};
  Complex c2_avg{};
  double q_avg = 0.0;
  Complex g_c{};
  Complex g_mb{};
  double delta_c2_eff = 0.0;
  double delta_m_eff = 0.0;
  double rabi = 0.0;
  double drive = 0.0;

  /// Derived mode only: the closed form and the linear solve disagree by more
  /// than 1e-9 relative.
  bool closed_form_discrepancy = false;
  double closed_form_relative_gap = 0.0;
  int iterations = 0;
};

/// Computes the steady-state amplitudes, effective detunings and couplings.
/// In derived mode the mechanical displacement is found self-consistently.
SemiclassicalState solve_semiclassics(const SystemParams& params);

}  // namespace ommsim
