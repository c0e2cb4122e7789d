#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "ommsim/errors.hpp"
#include "ommsim/model.hpp"
#include "ommsim/units.hpp"
#include "support/oracles.hpp"

namespace {

using namespace ommsim;
using units::angular;

// Reference values computed with mpmath at 40 digits.
constexpr double kNbRef = 4.72514244378844897;         // 40 MHz, 10 mK
constexpr double kNmRef = 1.4359925012169498e-21;      // 10 GHz, 10 mK
constexpr double kDriveRef = 769624201513.4987;        // 4.4 mW, 2 MHz, 1064 nm
constexpr double kRabiRef = 20203152219677.293;        // 1 mT, 10 um^3, 4.22e27

TEST(ThermalOccupation, FrozenPhononValue) {
  EXPECT_NEAR(thermal_occupation(angular(40e6), 0.01) / kNbRef, 1.0, 1e-12);
}

TEST(ThermalOccupation, FrozenMagnonValue) {
  EXPECT_NEAR(thermal_occupation(angular(10e9), 0.01) / kNmRef, 1.0, 1e-9);
}

TEST(ThermalOccupation, ZeroTemperatureIsExactlyZero) {
  EXPECT_EQ(thermal_occupation(angular(40e6), 0.0), 0.0);
}

TEST(ThermalOccupation, EqualsOneAtLn2) {
  const double omega = angular(40e6);
  const double t = units::kHbar * omega / (units::kBoltzmann * std::log(2.0));
  EXPECT_NEAR(thermal_occupation(omega, t), 1.0, 1e-12);
}

TEST(ThermalOccupation, MonotoneInTemperature) {
  double prev = 0.0;
  for (double t = 1e-3; t < 1.0; t *= 1.3) {
    const double n = thermal_occupation(angular(40e6), t);
    EXPECT_GT(n, prev);
    prev = n;
  }
}

TEST(ThermalOccupation, RejectsBadInput) {
  EXPECT_THROW(thermal_occupation(angular(40e6), -1e-3), DomainError);
  EXPECT_THROW(thermal_occupation(0.0, 0.01), DomainError);
  EXPECT_THROW(thermal_occupation(-1.0, 0.01), DomainError);
}

TEST(Drive, FrozenLaserDrive) {
  EXPECT_NEAR(laser_drive_strength(4.4e-3, angular(2e6), 1064e-9) / kDriveRef, 1.0, 1e-12);
}

TEST(Drive, ZeroPowerGivesZero) { EXPECT_EQ(laser_drive_strength(0.0, angular(2e6), 1064e-9), 0.0); }

TEST(Drive, RejectsBadInput) {
  EXPECT_THROW(laser_drive_strength(-1e-3, angular(2e6), 1064e-9), DomainError);
  EXPECT_THROW(laser_drive_strength(1e-3, 0.0, 1064e-9), DomainError);
  EXPECT_THROW(laser_drive_strength(1e-3, angular(2e6), 0.0), DomainError);
}

TEST(Rabi, FrozenValue) {
  EXPECT_NEAR(rabi_frequency(1e-3, 1e-17, 4.22e27) / kRabiRef, 1.0, 1e-12);
}

TEST(Rabi, LinearInFieldAndZeroAtZero) {
  EXPECT_EQ(rabi_frequency(0.0, 1e-17, 4.22e27), 0.0);
  EXPECT_NEAR(rabi_frequency(3e-3, 1e-17, 4.22e27) / rabi_frequency(1e-3, 1e-17, 4.22e27), 3.0,
              1e-14);
  EXPECT_THROW(rabi_frequency(-1e-3, 1e-17, 4.22e27), DomainError);
  EXPECT_THROW(rabi_frequency(1e-3, 0.0, 4.22e27), DomainError);
}

TEST(MagnonAverage, LorentzianResponse) {
  const Complex m = magnon_average(2.0, 1.0, 3.0);
  EXPECT_NEAR(std::abs(m - 2.0 / Complex(1.0, 3.0)), 0.0, 1e-15);
  // |<m>| peaks at zero detuning.
  EXPECT_GT(std::abs(magnon_average(1.0, 1.0, 0.0)), std::abs(magnon_average(1.0, 1.0, 0.5)));
  EXPECT_GT(std::abs(magnon_average(1.0, 1.0, 0.0)), std::abs(magnon_average(1.0, 1.0, -0.5)));
  EXPECT_THROW(magnon_average(1.0, 0.0, 0.0), DomainError);
}

CavityCouplings sample_couplings() {
  const double wb = angular(40e6);
  return {angular(4e6),   angular(8e6),  -0.95 * wb,  angular(1e6),
          -0.8 * wb,      angular(2e6),  -0.8 * wb,   angular(2e6)};
}

TEST(CavitySteadyState, DecoupledLimit) {
  CavityCouplings cc = sample_couplings();
  cc.g_n1 = cc.g_n2 = 0.0;
  const double e = 1e9;
  const auto amp = cavity_steady_state(e, cc, angular(40e6));
  const Complex expected = e / Complex(cc.kappa_c2, cc.delta_c2);
  EXPECT_LT(std::abs(amp.cavity2 - expected) / std::abs(expected), 1e-13);
  EXPECT_EQ(std::abs(amp.atom), 0.0);
}

TEST(CavitySteadyState, MatchesHandEliminatedFormula) {
  const CavityCouplings cc = sample_couplings();
  const double e = 7.7e11;
  const Complex da(cc.kappa_a, cc.delta_a), d1(cc.kappa_c1, cc.delta_c1),
      d2(cc.kappa_c2, cc.delta_c2);
  const double g1 = cc.g_n1, g2 = cc.g_n2;
  const Complex expected =
      e * (g1 * g1 - g1 * g2 + da * d1) / ((g1 * g1 + da * d1) * d2 + g2 * g2 * d1);
  const auto amp = cavity_steady_state(e, cc, angular(40e6));
  EXPECT_LT(std::abs(amp.cavity2 - expected) / std::abs(expected), 1e-12);
}

TEST(CavitySteadyState, SatisfiesEquationsOfMotion) {
  const CavityCouplings cc = sample_couplings();
  const double e = 3e10;
  const auto x = cavity_steady_state(e, cc, angular(40e6));
  const Complex i(0.0, 1.0);
  const Complex ra = -(i * cc.delta_a + cc.kappa_a) * x.atom - i * cc.g_n1 * x.cavity1 -
                     i * cc.g_n2 * x.cavity2;
  const Complex r1 = -(i * cc.delta_c1 + cc.kappa_c1) * x.cavity1 - i * cc.g_n1 * x.atom + e;
  const Complex r2 = -(i * cc.delta_c2 + cc.kappa_c2) * x.cavity2 - i * cc.g_n2 * x.atom + e;
  EXPECT_LT(std::abs(ra) / e, 1e-12);
  EXPECT_LT(std::abs(r1) / e, 1e-12);
  EXPECT_LT(std::abs(r2) / e, 1e-12);
}

TEST(CavitySteadyState, LinearInAtomCouplingAtFirstOrder) {
  // With g_N2 = 0 the cavity-2 amplitude is independent of g_N1.
  CavityCouplings cc = sample_couplings();
  cc.g_n2 = 0.0;
  const double wb = angular(40e6);
  const Complex base = cavity_steady_state(1e9, cc, wb).cavity2;
  cc.g_n1 *= 3.0;
  EXPECT_LT(std::abs(cavity_steady_state(1e9, cc, wb).cavity2 - base) / std::abs(base), 1e-13);
}

TEST(CavityClosedForm, PrintedFormHasOppositeSignWhenDecoupled) {
  CavityCouplings cc = sample_couplings();
  cc.g_n1 = cc.g_n2 = 0.0;
  const double e = 1e9;
  const Complex closed = cavity2_closed_form(e, cc, angular(40e6));
  const Complex linear = cavity_steady_state(e, cc, angular(40e6)).cavity2;
  EXPECT_LT(std::abs(closed + linear) / std::abs(linear), 1e-13);
}

TEST(CavityClosedForm, DegenerateDenominatorThrows) {
  const CavityCouplings cc = sample_couplings();
  EXPECT_THROW(cavity2_closed_form(1.0, cc, 1e20), DegenerateOperatingPoint);
  EXPECT_THROW(cavity_steady_state(1.0, cc, 1e40), DegenerateOperatingPoint);
}

TEST(CavityClosedForm, RejectsNonPositiveDecay) {
  CavityCouplings cc = sample_couplings();
  cc.kappa_a = 0.0;
  EXPECT_THROW(cavity2_closed_form(1.0, cc), DomainError);
  EXPECT_THROW(cavity_steady_state(1.0, cc), DomainError);
}

TEST(Mechanical, DisplacementAndCouplings) {
  const double q = mechanical_displacement(2.0, 3.0, Complex(1.0, 1.0), Complex(0.0, 2.0), 4.0);
  EXPECT_DOUBLE_EQ(q, (2.0 * 2.0 - 3.0 * 4.0) / 4.0);
  EXPECT_THROW(mechanical_displacement(1.0, 1.0, 1.0, 1.0, 0.0), DomainError);

  const auto g = effective_couplings(2.0, 3.0, Complex(1.0, 0.0), Complex(0.0, 1.0));
  EXPECT_NEAR(std::abs(g.g_c - Complex(0.0, 2.0 * std::sqrt(2.0))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g.g_mb - Complex(-3.0 * std::sqrt(2.0), 0.0)), 0.0, 1e-15);
}

TEST(Validate, NamesTheInvariant) {
  SystemParams p = default_params();
  p.kappa_c1 = -1.0;
  try {
    validate(p);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("kappa_c1"), std::string::npos);
  }
  p = default_params();
  p.temperature = -0.1;
  EXPECT_THROW(validate(p), DomainError);
  p = default_params();
  p.gamma_b = std::nan("");
  EXPECT_THROW(validate(p), DomainError);
  EXPECT_NO_THROW(validate(default_params()));
}

TEST(Validate, LowQualityFactorIsAdvisory) {
  SystemParams p = default_params();
  EXPECT_TRUE(advisories(p).empty());
  p.gamma_b = p.omega_b / 50.0;
  EXPECT_NO_THROW(validate(p));
  ASSERT_EQ(advisories(p).size(), 1u);
  EXPECT_NE(advisories(p)[0].find("Q_b"), std::string::npos);
}

TEST(Semiclassics, DirectModePassesThrough) {
  const SystemParams p = default_params();
  const auto s = solve_semiclassics(p);
  EXPECT_EQ(s.q_avg, 0.0);
  EXPECT_EQ(s.g_c, Complex(p.g_c_direct, 0.0));
  EXPECT_EQ(s.g_mb, Complex(p.g_mb_direct, 0.0));
  EXPECT_EQ(s.delta_c2_eff, p.delta_c2);
  EXPECT_EQ(s.delta_m_eff, p.delta_m);
}

SystemParams derived_params() {
  SystemParams p = default_params();
  p.coupling_mode = CouplingMode::derived;
  p.laser_power = 1e-4;
  return p;
}

TEST(Semiclassics, DerivedModeIsSelfConsistent) {
  const SystemParams p = derived_params();
  const auto s = solve_semiclassics(p);
  EXPECT_NEAR(s.delta_c2_eff, p.delta_c2 - p.g_c * s.q_avg, 1e-6);
  EXPECT_NEAR(s.delta_m_eff, p.delta_m + p.g_m * s.q_avg, 1e-6);
  const double q = mechanical_displacement(p.g_c, p.g_m, s.c2_avg, s.m_avg, p.omega_b);
  EXPECT_NEAR(q, s.q_avg, 1e-10 * std::abs(q));
  const auto g = effective_couplings(p.g_c, p.g_m, s.c2_avg, s.m_avg);
  EXPECT_EQ(s.g_c, g.g_c);
  EXPECT_EQ(s.g_mb, g.g_mb);
  // The printed closed form disagrees with the linear solve at this point.
  EXPECT_TRUE(s.closed_form_discrepancy);
}

TEST(Semiclassics, DisplacementMatchesMeanFieldRelaxation) {
  SystemParams p = derived_params();
  // Heavier mechanical damping shortens the transient; the fixed point does
  // not depend on gamma_b. The slowest remaining rate is kappa_m = 0.025 wb.
  p.gamma_b = 0.5 * p.omega_b;
  const auto s = solve_semiclassics(p);
  const double q = oracle::relax_mechanical_displacement(p, s.drive, s.rabi, 2000.0, 0.01);
  EXPECT_NEAR(q / s.q_avg, 1.0, 1e-8) << "q_avg = " << s.q_avg << ", relaxed " << q;
}

TEST(Semiclassics, MagnonDetuningVariant) {
  SystemParams p = derived_params();
  p.magnon_uses_cavity2_detuning = true;
  const auto s = solve_semiclassics(p);
  EXPECT_LT(std::abs(s.m_avg - magnon_average(s.rabi, p.kappa_m, p.delta_c2)), 1e-9 * std::abs(s.m_avg));
}

TEST(Semiclassics, ZeroDrivesGiveZeroCouplings) {
  SystemParams p = derived_params();
  p.laser_power = 0.0;
  p.b0 = 0.0;
  const auto s = solve_semiclassics(p);
  EXPECT_EQ(std::abs(s.g_c), 0.0);
  EXPECT_EQ(std::abs(s.g_mb), 0.0);
  EXPECT_EQ(s.q_avg, 0.0);
}

TEST(Semiclassics, ClosedFormSolverIsSelectable) {
  SystemParams p = derived_params();
  p.cavity_solver = CavitySolver::closed_form;
  const auto s = solve_semiclassics(p);
  CavityCouplings cc{p.g_n1, p.g_n2, p.delta_a, p.kappa_a, p.delta_c1, p.kappa_c1,
                     s.delta_c2_eff, p.kappa_c2};
  const Complex expected = cavity2_closed_form(s.drive, cc, p.omega_b);
  EXPECT_LT(std::abs(s.c2_avg - expected) / std::abs(expected), 1e-9);
}

}  // namespace
