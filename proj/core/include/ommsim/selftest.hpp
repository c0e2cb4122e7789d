#pragma once

#include <string>
#include <vector>

namespace ommsim {

struct FixtureResult {
  std::string name;
  bool passed = false;
  double deviation = 0.0;  ///< worst absolute or relative error observed
  double tolerance = 0.0;
};

/// Closed-form fixtures exercised end to end: passive-cavity vacuum, the
/// uncoupled five-mode system, two-mode squeezed vacua and the Bose factor.
std::vector<FixtureResult> run_analytic_fixtures();

}  // namespace ommsim
