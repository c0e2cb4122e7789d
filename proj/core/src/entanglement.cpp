#include "ommsim/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <Eigen/LU>

#include "ommsim/errors.hpp"

namespace ommsim {

namespace {

constexpr std::array<std::string_view, 5> kAbbreviations{"a", "c1", "c2", "b", "m"};
constexpr double kRadicandFloor = -1e-12;
constexpr double kSymmetryTolerance = 1e-9;

double det2(const Eigen::Matrix2d& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

}  // namespace

std::string_view abbreviation(ModeId mode) {
  return kAbbreviations[static_cast<std::size_t>(mode)];
}

ModeId mode_from_abbreviation(std::string_view label) {
  for (std::size_t i = 0; i < kAbbreviations.size(); ++i)
    if (kAbbreviations[i] == label) return static_cast<ModeId>(i);
  throw DomainError("unknown mode label '" + std::string(label) + "'");
}

std::string column_name(const ModePair& pair) {
  return "E_" + std::string(abbreviation(pair.first)) + std::string(abbreviation(pair.second));
}

ModePair pair_from_label(std::string_view label) {
  if (label.starts_with("E_")) label.remove_prefix(2);
  // Labels are unambiguous: a two-character abbreviation always starts with 'c'.
  for (std::size_t split = 1; split < label.size(); ++split) {
    const auto head = label.substr(0, split);
    const auto tail = label.substr(split);
    const auto is_mode = [](std::string_view s) {
      return std::find(kAbbreviations.begin(), kAbbreviations.end(), s) != kAbbreviations.end();
    };
    if (is_mode(head) && is_mode(tail)) {
      ModePair pair{mode_from_abbreviation(head), mode_from_abbreviation(tail)};
      if (pair.first == pair.second)
        throw DomainError("mode pair '" + std::string(label) + "' names the same mode twice");
      return pair;
    }
  }
  throw DomainError("cannot parse mode pair '" + std::string(label) + "'");
}

Matrix4 two_mode_block(const Eigen::MatrixXd& v, const ModePair& pair) {
  if (pair.first == pair.second) throw DomainError("two_mode_block: modes must be distinct");
  const int r1 = first_row(pair.first);
  const int r2 = first_row(pair.second);
  if (v.rows() != v.cols() || v.rows() < std::max(r1, r2) + 2)
    throw DomainError("two_mode_block: covariance matrix too small for the requested modes");
  const std::array<int, 4> rows{r1, r1 + 1, r2, r2 + 1};
  Matrix4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = v(rows[i], rows[j]);
  return out;
}

double symplectic_nu_minus(const Matrix4& v0) {
  if (!v0.allFinite()) throw DomainError("symplectic_nu_minus: non-finite input");
  const double vmax = v0.cwiseAbs().maxCoeff();
  if ((v0 - v0.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * std::max(vmax, 1.0))
    throw DomainError("symplectic_nu_minus: covariance block is not symmetric");

  const Eigen::Matrix2d v1 = v0.topLeftCorner<2, 2>();
  const Eigen::Matrix2d v2 = v0.bottomRightCorner<2, 2>();
  const Eigen::Matrix2d v12 = v0.topRightCorner<2, 2>();
  const double sigma = det2(v1) + det2(v2) - 2.0 * det2(v12);

  double inner = sigma * sigma - 4.0 * v0.determinant();
  if (inner < 0.0) {
    if (inner < kRadicandFloor) {
      std::ostringstream os;
      os << "symplectic_nu_minus: negative radicand " << inner;
      throw NumericalError(os.str());
    }
    inner = 0.0;
  }
  double outer = sigma - std::sqrt(inner);
  if (outer < 0.0) {
    if (outer < kRadicandFloor) {
      std::ostringstream os;
      os << "symplectic_nu_minus: negative radicand " << outer
         << " (state violates the uncertainty principle)";
      throw NumericalError(os.str());
    }
    outer = 0.0;
  }
  return std::sqrt(outer / 2.0);
}

double log_negativity(const Matrix4& v0) {
  const double nu = symplectic_nu_minus(v0);
  return std::max(0.0, -std::log(2.0 * nu));
}

EntanglementReport entanglement_report(const Eigen::MatrixXd& v, const ModePair& pair,
                                       bool stable) {
  const Matrix4 block = two_mode_block(v, pair);
  EntanglementReport r;
  r.pair = pair;
  r.nu_minus = symplectic_nu_minus(block);
  r.e_n = std::max(0.0, -std::log(2.0 * r.nu_minus));
  r.stable = stable;
  return r;
}

std::optional<double> transformation_efficiency(double e_am, double e_ab) {
  if (!(e_am >= 0.0) || !(e_ab >= 0.0))
    throw DomainError("transformation_efficiency: inputs must be >= 0");
  if (e_ab == 0.0) return std::nullopt;
  return e_am / e_ab;
}

}  // namespace ommsim
