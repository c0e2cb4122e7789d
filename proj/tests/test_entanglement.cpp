#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ommsim/entanglement.hpp"
#include "ommsim/errors.hpp"
#include "ommsim/harness.hpp"
#include "support/oracles.hpp"

namespace {

using namespace ommsim;
using oracle::random_physical_cm;

Matrix4 tmsv(double r) {
  return 0.5 * oracle::two_mode_squeeze(r) * oracle::two_mode_squeeze(r).transpose();
}

TEST(NuMinus, MatchesPartialTransposeEigenvalues) {
  std::mt19937_64 rng(1234);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Matrix4 v = random_physical_cm(rng);
    const double closed = symplectic_nu_minus(v);
    const double oracle = oracle::nu_minus_partial_transpose(v);
    worst = std::max(worst, std::abs(closed - oracle));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(LogNegativity, TwoModeSqueezedVacuum) {
  for (double r : {0.0, 0.1, 0.5, 1.0, 1.5}) {
    EXPECT_NEAR(log_negativity(tmsv(r)), 2.0 * r, 1e-9) << "r = " << r;
    EXPECT_NEAR(symplectic_nu_minus(tmsv(r)), 0.5 * std::exp(-2.0 * r), 1e-9);
  }
}

TEST(LogNegativity, ProductStatesAreSeparable) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    // Locally squeezed, rotated thermal states with no correlations.
    const Eigen::Matrix4d s = oracle::local_rotation(6 * u(rng), 6 * u(rng)) *
                              oracle::local_squeeze(u(rng) - 0.5, u(rng) - 0.5);
    Eigen::Matrix4d w = Eigen::Matrix4d::Zero();
    const double n1 = 0.5 + u(rng), n2 = 0.5 + u(rng);
    w.diagonal() << n1, n1, n2, n2;
    Matrix4 v = s * w * s.transpose();
    v = 0.5 * (v + v.transpose());
    EXPECT_EQ(log_negativity(v), 0.0);
  }
}

TEST(LogNegativity, InvariantUnderLocalRotations) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  const Matrix4 v = tmsv(0.7);
  for (int k = 0; k < 50; ++k) {
    const Eigen::Matrix4d r = oracle::local_rotation(angle(rng), angle(rng));
    Matrix4 w = r * v * r.transpose();
    w = 0.5 * (w + w.transpose());
    EXPECT_NEAR(log_negativity(w), 1.4, 1e-9);
  }
}

TEST(LogNegativity, SymmetricUnderModeSwap) {
  std::mt19937_64 rng(17);
  Eigen::Matrix4d swap = Eigen::Matrix4d::Zero();
  swap(0, 2) = swap(1, 3) = swap(2, 0) = swap(3, 1) = 1.0;
  for (int k = 0; k < 100; ++k) {
    const Matrix4 v = random_physical_cm(rng);
    const Matrix4 w = swap * v * swap;
    EXPECT_NEAR(symplectic_nu_minus(v), symplectic_nu_minus(w), 1e-9);
  }
}

TEST(LogNegativity, ThermalNoiseReducesEntanglement) {
  double prev = log_negativity(tmsv(0.8));
  for (double extra : {0.05, 0.1, 0.2, 0.4, 0.8}) {
    const double e = log_negativity(tmsv(0.8) + extra * Matrix4::Identity());
    EXPECT_LE(e, prev);
    if (prev > 0.0) EXPECT_LT(e, prev);
    prev = e;
  }
}

TEST(NuMinus, RejectsAsymmetricAndNonFinite) {
  Matrix4 v = tmsv(0.3);
  v(0, 1) += 1e-3;
  EXPECT_THROW(symplectic_nu_minus(v), DomainError);
  v = tmsv(0.3);
  v(2, 2) = std::nan("");
  EXPECT_THROW(symplectic_nu_minus(v), DomainError);
}

TEST(NuMinus, UnphysicalStateRaises) {
  Matrix4 v = Matrix4::Identity();
  v(1, 1) = -1.0;
  EXPECT_THROW(symplectic_nu_minus(v), NumericalError);
}

TEST(NuMinus, ClampsTinyNegativeRadicand) {
  // The inner radicand of the vacuum is exactly zero.
  EXPECT_NO_THROW(symplectic_nu_minus(0.5 * Matrix4::Identity()));
  EXPECT_NEAR(symplectic_nu_minus(0.5 * Matrix4::Identity()), 0.5, 1e-15);
}

TEST(Pairs, LabelsRoundTrip) {
  for (const char* label : {"ab", "am", "c2b", "ac1", "c1c2", "bm", "E_am"}) {
    const ModePair pair = pair_from_label(label);
    std::string plain = label;
    if (plain.starts_with("E_")) plain = plain.substr(2);
    EXPECT_EQ(column_name(pair), "E_" + plain);
  }
  EXPECT_THROW(pair_from_label("aa"), DomainError);
  EXPECT_THROW(pair_from_label("xz"), DomainError);
  EXPECT_THROW(mode_from_abbreviation("c3"), DomainError);
}

TEST(Block, ExtractsTheRightRows) {
  Eigen::MatrixXd v(10, 10);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) v(i, j) = 10 * i + j;
  const Matrix4 b = two_mode_block(v, {ModeId::atom, ModeId::magnon});
  EXPECT_EQ(b(0, 0), 0);
  EXPECT_EQ(b(0, 2), 8);
  EXPECT_EQ(b(3, 3), 99);
  EXPECT_EQ(b(2, 1), 81);
  EXPECT_THROW(two_mode_block(Eigen::MatrixXd::Identity(4, 4), {ModeId::atom, ModeId::magnon}),
               DomainError);
}

TEST(Efficiency, RatioAndUndefined) {
  EXPECT_DOUBLE_EQ(*transformation_efficiency(0.2, 0.4), 0.5);
  EXPECT_FALSE(transformation_efficiency(0.2, 0.0).has_value());
  EXPECT_DOUBLE_EQ(*transformation_efficiency(0.0, 0.3), 0.0);
  EXPECT_THROW(transformation_efficiency(-0.1, 0.3), DomainError);
}

TEST(Pipeline, DecoupledAtomIsNotEntangledWithThePhonon) {
  SystemParams p = default_params();
  p.g_n1 = p.g_n2 = 0.0;
  p.g_c_direct = 0.0;  // without the atom the optomechanical PDC alone is unstable
  auto r = evaluate_point(p);
  ASSERT_TRUE(r.stable);
  EXPECT_NEAR(*r.e_ab, 0.0, 1e-12);  // nu_minus = 1/2 up to rounding
  p = default_params();
  r = evaluate_point(p);
  ASSERT_TRUE(r.stable);
  EXPECT_GT(*r.e_ab, 0.0);
}

TEST(Pipeline, EntanglementDecreasesWithTemperature) {
  double prev = 1e9;
  for (double t : {0.0, 0.01, 0.05, 0.1, 0.2}) {
    SystemParams p = default_params();
    p.temperature = t;
    const auto r = evaluate_point(p);
    ASSERT_TRUE(r.stable);
    EXPECT_LE(*r.e_ab, prev + 1e-12);
    prev = *r.e_ab;
  }
}

}  // namespace
