#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Core>

namespace ommsim {

enum class ModeId { atom = 0, cavity1 = 1, cavity2 = 2, phonon = 3, magnon = 4 };

/// Short label used in CSV column names: a, c1, c2, b, m.
std::string_view abbreviation(ModeId mode);
/// Inverse of `abbreviation`; throws DomainError for unknown labels.
ModeId mode_from_abbreviation(std::string_view label);
/// First quadrature row of the mode (x); y is the next row.
constexpr int first_row(ModeId mode) { return 2 * static_cast<int>(mode); }

using ModePair = std::pair<ModeId, ModeId>;

/// "E_" followed by both abbreviations, e.g. E_am.
std::string column_name(const ModePair& pair);
/// Parses "am", "c2b", ... into a mode pair.
ModePair pair_from_label(std::string_view label);

using Matrix4 = Eigen::Matrix4d;

/// [V1, V12; V12^T, V2] for the two modes, first-named mode first.
Matrix4 two_mode_block(const Eigen::MatrixXd& v, const ModePair& pair);

/// Smallest symplectic eigenvalue of the partially transposed two-mode CM,
/// from the closed form sqrt((S - sqrt(S^2 - 4 det V0)) / 2) with
/// S = det V1 + det V2 - 2 det V12.
double symplectic_nu_minus(const Matrix4& v0);

/// max(0, -ln(2 nu_minus)).
double log_negativity(const Matrix4& v0);

struct EntanglementReport {
  ModePair pair{};
  double nu_minus = 0.0;
  double e_n = 0.0;
  bool stable = false;
};

EntanglementReport entanglement_report(const Eigen::MatrixXd& v, const ModePair& pair,
                                       bool stable);

/// E_am / E_ab; std::nullopt when E_ab = 0 (the ratio is undefined).
std::optional<double> transformation_efficiency(double e_am, double e_ab);

}  // namespace ommsim
