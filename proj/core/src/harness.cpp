#include "ommsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>
#include <thread>

#include "ommsim/errors.hpp"

#ifndef OMMSIM_VERSION
#define OMMSIM_VERSION "unknown"
#endif

namespace ommsim {

namespace {

std::string describe_point(const SystemParams& p) {
  std::ostringstream os;
  os << std::setprecision(6) << " [at delta_a/wb=" << p.delta_a / p.omega_b
     << ", delta_c1/wb=" << p.delta_c1 / p.omega_b << ", delta_c2/wb=" << p.delta_c2 / p.omega_b
     << ", delta_m/wb=" << p.delta_m / p.omega_b << ", T=" << p.temperature << " K]";
  return os.str();
}

template <typename E>
[[noreturn]] void rethrow_annotated(const E& e, const SystemParams& p) {
  throw E(std::string(e.what()) + describe_point(p));
}

PointResult evaluate_unannotated(const SystemParams& params, const PointOptions& options) {
  PointResult out;
  out.warnings = advisories(params);
  out.semiclassics = solve_semiclassics(params);
  if (out.semiclassics.closed_form_discrepancy)
    out.warnings.push_back("closed-form <c2> differs from the linear solve (relative gap " +
                           std::to_string(out.semiclassics.closed_form_relative_gap) + ")");

  const DriftMatrix drift = build_drift(params, out.semiclassics);
  const DiffusionMatrix diffusion = build_diffusion(params);
  out.stability = stability(drift);
  out.stable = out.stability.stable;
  if (!out.stable) return out;

  out.covariance = solve_lyapunov(drift, diffusion);
  const auto& v = out.covariance->v;
  if (out.covariance->asymmetry_warning)
    out.warnings.push_back("Lyapunov solution asymmetric before symmetrization (" +
                           std::to_string(out.covariance->asymmetry) + ")");
  if (out.covariance->residual > LyapunovOptions{}.residual_tolerance)
    out.warnings.push_back("Lyapunov residual " + std::to_string(out.covariance->residual) +
                           " is above 1e-10 but within the round-off floor (near-marginal point)");
  out.min_uncertainty_eigenvalue = uncertainty_min_eigenvalue(v);

  for (const auto& pair : options.pairs)
    out.reports.push_back(entanglement_report(v, pair, true));

  out.e_ab = entanglement_report(v, {ModeId::atom, ModeId::phonon}, true).e_n;
  out.e_am = entanglement_report(v, {ModeId::atom, ModeId::magnon}, true).e_n;
  out.efficiency = transformation_efficiency(*out.e_am, *out.e_ab);

  if (options.oracle) {
    const Eigen::MatrixXd v0 = 0.5 * Eigen::MatrixXd::Identity(v.rows(), v.cols());
    const auto relaxed = integrate_to_steady_state(drift.a, diffusion.dense(), v0);
    out.oracle_deviation = (v - relaxed.v).norm() / v.norm();
    if (relaxed.stalled)
      out.warnings.push_back("RK4 oracle stopped on its round-off plateau at residual " +
                             std::to_string(relaxed.residual));
  }
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

SweepRecord evaluate_record(const SystemParams& base, const SweepSpec& spec, int i1, int i2) {
  SweepRecord rec;
  SystemParams p = base;
  rec.axis1_value = spec.axis1.value(i1);
  apply_parameter(p, spec.axis1.name, rec.axis1_value);
  if (spec.axis2) {
    rec.axis2_value = spec.axis2->value(i2);
    apply_parameter(p, spec.axis2->name, *rec.axis2_value);
  }
  rec.e_n.assign(spec.pairs.size(), std::nullopt);

  PointOptions opts;
  opts.pairs = spec.pairs;
  try {
    const PointResult r = evaluate_point(p, opts);
    rec.stable = r.stable;
    if (r.stable) {
      for (std::size_t k = 0; k < r.reports.size(); ++k) rec.e_n[k] = r.reports[k].e_n;
      rec.efficiency = r.efficiency;
    }
  } catch (const Error& e) {
    rec.stable = false;
    rec.error = e.what();
  }
  return rec;
}

}  // namespace

std::string tool_version() { return OMMSIM_VERSION; }

PointResult evaluate_point(const SystemParams& params, const PointOptions& options) {
  try {
    return evaluate_unannotated(params, options);
  } catch (const NonConvergenceError& e) {
    throw NonConvergenceError(std::string(e.what()) + describe_point(params),
                              e.final_residual());
  } catch (const PreconditionError& e) {
    rethrow_annotated(e, params);
  } catch (const DegenerateOperatingPoint& e) {
    rethrow_annotated(e, params);
  } catch (const NumericalError& e) {
    rethrow_annotated(e, params);
  } catch (const DomainError& e) {
    rethrow_annotated(e, params);
  }
}

const SweepRecord& SweepResult::at(int i1, int i2) const {
  const int n2 = spec.axis2 ? spec.axis2->count : 1;
  return records.at(static_cast<std::size_t>(i1) * static_cast<std::size_t>(n2) +
                    static_cast<std::size_t>(i2));
}

SweepResult run_sweep(const SystemParams& params, const SweepSpec& spec,
                      const SweepOptions& options) {
  validate(params);
  validate(spec);

  SweepResult result;
  result.params = params;
  result.spec = spec;
  result.tool_version = tool_version();
  result.timestamp = utc_timestamp();

  const std::size_t total = spec.size();
  const int n2 = spec.axis2 ? spec.axis2->count : 1;
  result.records.resize(total);

  unsigned workers = options.threads;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));

  // Each worker claims indices from a shared counter and writes only its own
  // slots, so the output order is fixed by the index, not by the schedule.
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) {
      const int i1 = static_cast<int>(idx / static_cast<std::size_t>(n2));
      const int i2 = static_cast<int>(idx % static_cast<std::size_t>(n2));
      result.records[idx] = evaluate_record(params, spec, i1, i2);
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return result;
}

}  // namespace ommsim
