#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "riccati/benchmarks.hpp"
#include "riccati/dre.hpp"
#include "riccati/galerkin.hpp"

namespace riccati {

/// Flat key=value run description. Keys: benchmark, n (alias grid_n),
/// solver, h, tf, tol_exp, truncation_tol, are_tol, out, reference,
/// reference_substeps, snapshot_stride.
struct RunConfig {
  std::string benchmark = "tridiag";
  Index size = 20;
  std::string solver = "galerkin";
  double h = 0.03125;
  double tf = 0.0;  // 0: benchmark horizon
  double tol_exp = 1e10;
  double truncation_tol = 2.220446049250313e-16;
  double are_tol = 1e-12;
  std::string out = "out";
  std::string reference = "formula2";
  long reference_substeps = 1;
  long snapshot_stride = 1;

  /// Applies one `key=value` pair; throws kConfig on unknown keys or
  /// malformed values.
  void set(const std::string& key, const std::string& value);
  /// Throws kConfig; resolves tf = 0 to the benchmark horizon.
  void validate();
};

const std::vector<std::string>& solver_ids();
const std::vector<std::string>& reference_ids();

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
/// `key=value` overrides on top of a loaded config.
void apply_overrides(RunConfig& cfg, const std::vector<std::string>& kv);

/// Output directory for `out`: relative paths resolve against
/// $RICCATI_OUT when set, else the working directory.
std::filesystem::path output_dir(const std::string& out);

/// Everything a run produces, before serialization.
struct RunResult {
  RunConfig config;
  AreSolution are;
  GalerkinModel model;
  std::vector<double> times;
  std::vector<SymMatrix> states;
  std::vector<SymMatrix> reference;
  std::vector<StepDiagnostics> diagnostics;
  double seconds = 0.0;
};

/// Solves the configured problem and its reference; no file output.
RunResult execute(RunConfig cfg);

/// Runs and writes trajectory.csv, decay.csv, diagnostics.csv, timing.csv
/// and summary.csv into output_dir(cfg.out). Returns the directory.
std::filesystem::path run_experiment(const RunConfig& cfg);

/// Long-format compare.csv over several runs on one benchmark. Returns the
/// path of the written file. Throws kMixedBenchmark.
std::filesystem::path compare_solvers(const std::vector<RunConfig>& cfgs,
                                      const std::string& out);

/// Dumps A, B, C, M, X0 of a benchmark as CSV files into `dir`.
void dump_benchmark(const std::string& name, Index size,
                    const std::filesystem::path& dir);

/// Process exit code for an error: 2 config, 4 IO, 3 otherwise.
int exit_code(const Error& e);

/// "%.16e", with nan/inf spelled out.
std::string format_real(double v);

}  // namespace riccati
