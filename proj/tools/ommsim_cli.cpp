// ommsim: steady-state entanglement of the atom / cavity / phonon / magnon system.
//
//   ommsim point     [--config c.json] [--oracle]
//   ommsim sweep     [--config c.json] --out grid.csv [--heatmap am] [--reproducible] [--threads n]
//   ommsim stability [--config c.json]
//   ommsim selftest

#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ommsim/ommsim.hpp"

namespace {

using namespace ommsim;

RunConfig load_or_default(const std::string& path) {
  if (path.empty()) return parse_config("{}");
  return load_config(path);
}

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

int run_point(const std::string& config_path, bool oracle) {
  const RunConfig cfg = load_or_default(config_path);
  PointOptions options;
  options.pairs = cfg.sweep.pairs;
  options.oracle = oracle;
  const PointResult r = evaluate_point(cfg.params, options);

  const auto& s = r.semiclassics;
  std::cout << "coupling_mode=" << (s.mode == CouplingMode::direct ? "direct" : "derived") << '\n'
            << "G_c_hz=" << format_number(units::ordinary(std::abs(s.g_c))) << '\n'
            << "G_mb_hz=" << format_number(units::ordinary(std::abs(s.g_mb))) << '\n'
            << "delta_c2_eff_over_wb=" << format_number(s.delta_c2_eff / cfg.params.omega_b) << '\n'
            << "delta_m_eff_over_wb=" << format_number(s.delta_m_eff / cfg.params.omega_b) << '\n'
            << "q_avg=" << format_number(s.q_avg) << '\n'
            << "stable=" << (r.stable ? 1 : 0) << '\n'
            << "max_real_eigenvalue_hz="
            << format_number(units::ordinary(r.stability.max_real_part)) << '\n';
  if (r.stable) {
    std::cout << "min_uncertainty_eigenvalue=" << format_number(r.min_uncertainty_eigenvalue)
              << '\n'
              << "lyapunov_residual=" << format_number(r.covariance->residual) << '\n';
  }
  for (const auto& rep : r.reports)
    std::cout << column_name(rep.pair) << '=' << format_number(rep.e_n) << '\n'
              << "nu_minus_" << column_name(rep.pair).substr(2) << '='
              << format_number(rep.nu_minus) << '\n';
  if (!r.stable)
    for (const auto& pair : options.pairs) std::cout << column_name(pair) << "=\n";
  std::cout << "efficiency=" << opt(r.efficiency) << '\n';
  if (oracle && r.oracle_deviation)
    std::cout << "oracle_max_deviation=" << format_number(*r.oracle_deviation) << '\n';
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  return 0;
}

std::filesystem::path heatmap_path(const std::filesystem::path& csv, const ModePair& pair) {
  std::filesystem::path out = csv;
  out.replace_extension();
  out += "_" + column_name(pair) + ".pgm";
  return out;
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_path,
                  const std::string& heatmap, bool reproducible, unsigned threads) {
  const RunConfig cfg = load_or_default(config_path);
  SweepOptions options;
  options.threads = threads;
  const SweepResult result = run_sweep(cfg.params, cfg.sweep, options);

  if (out_path.empty() || out_path == "-") {
    write_csv(std::cout, result, reproducible);
  } else {
    emit_csv(result, out_path, reproducible);
  }
  if (!heatmap.empty()) {
    const ModePair pair = pair_from_label(heatmap);
    const std::filesystem::path base = out_path.empty() || out_path == "-" ? "sweep.csv" : out_path;
    const auto path = heatmap_path(base, pair);
    emit_heatmap(result, pair, path);
    std::cerr << "heatmap written to " << path.string() << '\n';
  }
  std::size_t failed = 0;
  for (const auto& rec : result.records) failed += rec.error.empty() ? 0 : 1;
  if (failed) std::cerr << "warning: " << failed << " grid point(s) failed numerically\n";
  return 0;
}

int run_stability(const std::string& config_path) {
  const RunConfig cfg = load_or_default(config_path);
  const auto s = solve_semiclassics(cfg.params);
  const auto report = stability(build_drift(cfg.params, s));
  std::cout << "index,re_hz,im_hz,re_over_wb,im_over_wb\n";
  for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
    const auto& l = report.eigenvalues[i];
    std::cout << i << ',' << format_number(units::ordinary(l.real())) << ','
              << format_number(units::ordinary(l.imag())) << ','
              << format_number(l.real() / cfg.params.omega_b) << ','
              << format_number(l.imag() / cfg.params.omega_b) << '\n';
  }
  std::cout << "# stable=" << (report.stable ? 1 : 0)
            << " margin_hz=" << format_number(units::ordinary(report.margin)) << '\n';
  return 0;
}

int run_selftest() {
  int failures = 0;
  for (const auto& f : run_analytic_fixtures()) {
    std::cout << (f.passed ? "PASS " : "FAIL ") << f.name << "  (deviation "
              << format_number(f.deviation) << ", tolerance " << format_number(f.tolerance)
              << ")\n";
    failures += f.passed ? 0 : 1;
  }
  std::cout << (failures ? "selftest FAILED\n" : "selftest passed\n");
  return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state entanglement of the five-mode opto-magnomechanical system"};
  app.set_version_flag("--version", ommsim::tool_version());
  app.require_subcommand(1);

  std::string config_path;
  bool oracle = false;
  std::string out_path;
  std::string heatmap;
  bool reproducible = false;
  unsigned threads = 0;

  auto* point = app.add_subcommand("point", "Evaluate one operating point (key=value report)");
  point->add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
  point->add_flag("--oracle", oracle, "Cross-check the covariance with RK4 relaxation");

  auto* sweep = app.add_subcommand("sweep", "Evaluate a 1D/2D grid and write CSV");
  sweep->add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
  sweep->add_option("--out", out_path, "CSV output path ('-' for stdout)");
  sweep->add_option("--heatmap", heatmap, "Also write a PGM heatmap for this pair (e.g. am)");
  sweep->add_flag("--reproducible", reproducible, "Omit the timestamp metadata line");
  sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* stab = app.add_subcommand("stability", "Print the drift-matrix eigenvalues");
  stab->add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);

  auto* self = app.add_subcommand("selftest", "Run the analytic fixtures");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*point) return run_point(config_path, oracle);
    if (*sweep) return run_sweep_cmd(config_path, out_path, heatmap, reproducible, threads);
    if (*stab) return run_stability(config_path);
    if (*self) return run_selftest();
  } catch (const ommsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ommsim::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
