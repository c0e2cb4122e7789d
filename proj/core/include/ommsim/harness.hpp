#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ommsim/config.hpp"
#include "ommsim/dynamics.hpp"
#include "ommsim/entanglement.hpp"
#include "ommsim/model.hpp"
#include "ommsim/steadystate.hpp"

namespace ommsim {

/// Library version string.
std::string tool_version();

struct PointOptions {
  std::vector<ModePair> pairs = default_pairs();
  /// Also relax the covariance with RK4 and report the deviation from the
  /// Lyapunov solution.
  bool oracle = false;
};

struct PointResult {
  SemiclassicalState semiclassics;
  StabilityReport stability;
  bool stable = false;

  /// One report per requested pair; empty for unstable points.
  std::vector<EntanglementReport> reports;
  std::optional<double> e_ab;
  std::optional<double> e_am;
  std::optional<double> efficiency;

  std::optional<CovarianceMatrix> covariance;
  double min_uncertainty_eigenvalue = 0.0;
  std::optional<double> oracle_deviation;  ///< ||V_lyap - V_rk4||_F / ||V_lyap||_F

  std::vector<std::string> warnings;
};

/// Semiclassics -> drift/diffusion -> stability -> covariance -> E_N.
/// Errors are rethrown with the operating point appended to the message.
PointResult evaluate_point(const SystemParams& params, const PointOptions& options = {});

struct SweepRecord {
  double axis1_value = 0.0;
  std::optional<double> axis2_value;
  bool stable = false;
  std::vector<std::optional<double>> e_n;  ///< aligned with SweepSpec::pairs
  std::optional<double> efficiency;
  std::string error;  ///< non-empty when the point failed numerically
};

struct SweepResult {
  SystemParams params;
  SweepSpec spec;
  std::vector<SweepRecord> records;  ///< row-major: axis1 outer, axis2 inner
  std::string tool_version;
  std::string timestamp;  ///< ISO 8601 UTC

  const SweepRecord& at(int i1, int i2 = 0) const;
};

struct SweepOptions {
  /// Worker count; 0 uses std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Evaluates every grid point independently. The result does not depend on
/// the worker count or the order in which workers pick up points.
SweepResult run_sweep(const SystemParams& params, const SweepSpec& spec,
                      const SweepOptions& options = {});

}  // namespace ommsim
