#include "riccati/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace riccati {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || !std::isfinite(out)) {
    throw Error(ErrorCode::kConfig, "bad number for " + key + ": '" + v + "'");
  }
  return out;
}

long parse_count(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long out = 0;
  try {
    out = std::stol(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) {
    throw Error(ErrorCode::kConfig, "bad integer for " + key + ": '" + v + "'");
  }
  return out;
}

bool contains(const std::vector<std::string>& ids, const std::string& id) {
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::string join(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) out += (out.empty() ? "" : ", ") + id;
  return out;
}

const std::vector<std::string>& benchmark_ids() {
  static const std::vector<std::string> ids = {
      "tridiag", "tridiag_mass", "conv_diff", "scalar", "diag_rank1"};
  return ids;
}

std::ofstream open_csv(const fs::path& path) {
  std::ofstream f(path, std::ios::out | std::ios::trunc);
  if (!f) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return f;
}

void close_csv(std::ofstream& f, const fs::path& path) {
  f.flush();
  if (!f) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

struct SolverOutput {
  std::vector<double> times;
  std::vector<SymMatrix> states;
  std::vector<StepDiagnostics> diagnostics;
};

SolverOutput from_trajectory(DreTrajectory&& traj) {
  SolverOutput out;
  out.times = std::move(traj.times);
  out.states.reserve(traj.states.size());
  for (Matrix& w : traj.states) out.states.emplace_back(std::move(w));
  out.diagnostics = std::move(traj.diagnostics);
  return out;
}

SolverOutput run_solver(const std::string& id, const ProblemInstance& inst,
                        const StandardForm& s, const AreSolution& are,
                        const GalerkinModel& model, double h, double tf,
                        const RunConfig& cfg) {
  StepOptions diag;
  diag.diagnostics = true;
  if (id == "galerkin") {
    DreTrajectory red = solve_reduced(model, h, tf, cfg.tol_exp, diag);
    SolverOutput out;
    out.times = red.times;
    out.diagnostics = red.diagnostics;
    for (std::size_t k = 0; k < red.size(); ++k) {
      out.states.push_back(reconstruct(model, red, k));
    }
    return out;
  }
  if (id == "moddm-full") {
    return from_trajectory(modified_davison_maki(embed_dre(s, inst.X0), h, tf,
                                                 cfg.tol_exp, true, diag));
  }
  if (id == "dm") {
    return from_trajectory(davison_maki(embed_dre(s, inst.X0), h, tf,
                                        DmVariant::kExpUpdate, diag));
  }
  if (id == "rk-oracle") {
    return from_trajectory(rk_oracle(embed_dre(s, inst.X0), h, tf));
  }
  if (id == "lie" || id == "strang") {
    const auto scheme =
        id == "lie" ? SplittingScheme::kLie : SplittingScheme::kStrang;
    return from_trajectory(splitting_solve(s, inst.X0, h, tf, scheme));
  }
  if (id == "formula1" || id == "formula2") {
    const long steps = step_count(h, tf);
    SolverOutput out;
    auto eval = [&](const auto& formula) {
      for (long k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * h;
        out.times.push_back(t);
        out.states.push_back(formula.at(t));
      }
    };
    if (id == "formula1") {
      eval(SolutionFormulaI(s, inst.X0, are.X));
    } else {
      eval(SolutionFormulaII(s, inst.X0, are.X));
    }
    return out;
  }
  throw Error(ErrorCode::kConfig, "unknown solver '" + id + "'");
}

struct Metrics {
  double rel2, relF, abs2, absF;
};

Metrics metrics_or_nan(const SymMatrix& x, const SymMatrix& ref) {
  const ErrorMetrics a = absolute_metrics(x, ref);
  Metrics m{std::numeric_limits<double>::quiet_NaN(),
            std::numeric_limits<double>::quiet_NaN(), a.abs2, a.absF};
  try {
    const ErrorMetrics r = error_metrics(x, ref);
    m.rel2 = r.rel2;
    m.relF = r.relF;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kZeroReference) throw;
  }
  return m;
}

bool is_snapshot(std::size_t k, std::size_t last, long stride) {
  return k == last || k % static_cast<std::size_t>(stride) == 0;
}

}  // namespace

const std::vector<std::string>& solver_ids() {
  static const std::vector<std::string> ids = {
      "galerkin", "moddm-full", "dm",     "formula1",
      "formula2", "lie",        "strang", "rk-oracle"};
  return ids;
}

const std::vector<std::string>& reference_ids() {
  static const std::vector<std::string> ids = {"formula2", "formula1",
                                               "moddm-full", "rk-oracle"};
  return ids;
}

void RunConfig::set(const std::string& key_in, const std::string& value_in) {
  const std::string key = trim(key_in);
  const std::string value = trim(value_in);
  if (key == "benchmark") {
    benchmark = value;
  } else if (key == "n" || key == "grid_n") {
    size = parse_count(key, value);
  } else if (key == "solver") {
    solver = value;
  } else if (key == "h") {
    h = parse_real(key, value);
  } else if (key == "tf") {
    tf = parse_real(key, value);
  } else if (key == "tol_exp") {
    tol_exp = parse_real(key, value);
  } else if (key == "truncation_tol") {
    truncation_tol = parse_real(key, value);
  } else if (key == "are_tol") {
    are_tol = parse_real(key, value);
  } else if (key == "out") {
    out = value;
  } else if (key == "reference") {
    reference = value;
  } else if (key == "reference_substeps") {
    reference_substeps = parse_count(key, value);
  } else if (key == "snapshot_stride") {
    snapshot_stride = parse_count(key, value);
  } else {
    throw Error(ErrorCode::kConfig, "unknown key '" + key + "'");
  }
}

void RunConfig::validate() {
  if (!contains(benchmark_ids(), benchmark)) {
    throw Error(ErrorCode::kConfig, "benchmark must be one of: " +
                                        join(benchmark_ids()));
  }
  if (!contains(solver_ids(), solver)) {
    throw Error(ErrorCode::kConfig,
                "solver must be one of: " + join(solver_ids()));
  }
  if (!contains(reference_ids(), reference)) {
    throw Error(ErrorCode::kConfig,
                "reference must be one of: " + join(reference_ids()));
  }
  if (size < 1) throw Error(ErrorCode::kConfig, "n must be >= 1");
  if (!(h > 0.0)) throw Error(ErrorCode::kConfig, "h must be > 0");
  if (tf < 0.0) throw Error(ErrorCode::kConfig, "tf must be >= 0");
  if (tf == 0.0) tf = gen_benchmark(benchmark, size).horizon;
  const double ratio = tf / h;
  if (std::abs(ratio - std::round(ratio)) > 1e-12 * std::max(1.0, ratio) ||
      std::round(ratio) < 1.0) {
    throw Error(ErrorCode::kConfig, "h must divide tf");
  }
  if (!(tol_exp > 0.0)) throw Error(ErrorCode::kConfig, "tol_exp must be > 0");
  if (!(truncation_tol >= 1e-16 && truncation_tol < 1.0)) {
    throw Error(ErrorCode::kConfig, "truncation_tol must be in [1e-16, 1)");
  }
  if (!(are_tol > 0.0 && are_tol <= 1e-2)) {
    throw Error(ErrorCode::kConfig, "are_tol must be in (0, 1e-2]");
  }
  if (reference_substeps < 1 || snapshot_stride < 1) {
    throw Error(ErrorCode::kConfig,
                "reference_substeps and snapshot_stride must be >= 1");
  }
  if (out.empty()) throw Error(ErrorCode::kConfig, "out must not be empty");
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfig,
                  "line " + std::to_string(lineno) + ": expected key=value");
    }
    cfg.set(line.substr(0, eq), line.substr(eq + 1));
  }
  return cfg;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::kConfig, "cannot read " + path.string());
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str());
}

void apply_overrides(RunConfig& cfg, const std::vector<std::string>& kv) {
  for (const std::string& item : kv) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfig, "override '" + item + "' is not key=value");
    }
    cfg.set(item.substr(0, eq), item.substr(eq + 1));
  }
}

fs::path output_dir(const std::string& out) {
  const fs::path p(out);
  if (p.is_absolute()) return p;
  if (const char* root = std::getenv("RICCATI_OUT"); root && *root) {
    return fs::path(root) / p;
  }
  return p;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kConfig:
    case ErrorCode::kMixedBenchmark:
      return 2;
    case ErrorCode::kIo:
      return 4;
    default:
      return 3;
  }
}

RunResult execute(RunConfig cfg) {
  cfg.validate();
  const ProblemInstance inst = gen_benchmark(cfg.benchmark, cfg.size);
  const StandardForm s(inst.system);

  RunResult r;
  r.are = solve_are_newton(inst.system, cfg.are_tol);
  r.model = build_model(inst.system, r.are, cfg.truncation_tol);

  const auto start = std::chrono::steady_clock::now();
  SolverOutput sol =
      run_solver(cfg.solver, inst, s, r.are, r.model, cfg.h, cfg.tf, cfg);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            start)
                  .count();

  const double h_ref = cfg.h / static_cast<double>(cfg.reference_substeps);
  SolverOutput ref =
      run_solver(cfg.reference, inst, s, r.are, r.model, h_ref, cfg.tf, cfg);
  const std::size_t stride = static_cast<std::size_t>(cfg.reference_substeps);
  for (std::size_t k = 0; k < sol.states.size(); ++k) {
    r.reference.push_back(ref.states.at(k * stride));
  }
  r.times = std::move(sol.times);
  r.states = std::move(sol.states);
  r.diagnostics = std::move(sol.diagnostics);
  r.config = std::move(cfg);
  return r;
}

fs::path run_experiment(const RunConfig& cfg_in) {
  RunConfig cfg = cfg_in;
  cfg.validate();
  const fs::path dir = output_dir(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string());

  const RunResult r = execute(cfg);
  const std::size_t last = r.states.size() - 1;

  double max_rel2 = 0.0;
  double max_relF = 0.0;
  Metrics final_m{};
  {
    const fs::path p = dir / "trajectory.csv";
    std::ofstream f = open_csv(p);
    f << "t,rel2,relF,abs2,absF\n";
    for (std::size_t k = 0; k <= last; ++k) {
      const Metrics m = metrics_or_nan(r.states[k], r.reference[k]);
      if (!std::isnan(m.rel2)) max_rel2 = std::max(max_rel2, m.rel2);
      if (!std::isnan(m.relF)) max_relF = std::max(max_relF, m.relF);
      if (k == last) final_m = m;
      if (!is_snapshot(k, last, cfg.snapshot_stride)) continue;
      f << format_real(r.times[k]) << ',' << format_real(m.rel2) << ','
        << format_real(m.relF) << ',' << format_real(m.abs2) << ','
        << format_real(m.absF) << '\n';
    }
    close_csv(f, p);
  }
  {
    const fs::path p = dir / "decay.csv";
    std::ofstream f = open_csv(p);
    f << "t,k,eigenvalue\n";
    for (std::size_t k = 0; k <= last; ++k) {
      if (!is_snapshot(k, last, cfg.snapshot_stride)) continue;
      const Vector lam = sym_eig(r.states[k]).values;
      for (Index i = 0; i < lam.size(); ++i) {
        f << format_real(r.times[k]) << ',' << (i + 1) << ','
          << format_real(lam(i)) << '\n';
      }
    }
    close_csv(f, p);
  }
  {
    const fs::path p = dir / "diagnostics.csv";
    std::ofstream f = open_csv(p);
    f << "step,t,cond_u,norm_u,norm_v\n";
    for (std::size_t k = 0; k < r.diagnostics.size(); ++k) {
      const StepDiagnostics& d = r.diagnostics[k];
      f << k << ',' << format_real(r.times[k]) << ',' << format_real(d.cond_u)
        << ',' << format_real(d.norm_u) << ',' << format_real(d.norm_v)
        << '\n';
    }
    close_csv(f, p);
  }
  {
    const fs::path p = dir / "timing.csv";
    std::ofstream f = open_csv(p);
    f << "solver,h,seconds\n"
      << cfg.solver << ',' << format_real(cfg.h) << ','
      << format_real(r.seconds) << '\n';
    close_csv(f, p);
  }
  {
    const fs::path p = dir / "summary.csv";
    std::ofstream f = open_csv(p);
    f << "benchmark,n,solver,reference,h,tf,steps,are_abs_residual,"
         "are_rel_residual,newton_iters,k,projected_residual,full_residual,"
         "max_rel2,max_relF,final_rel2,final_relF,stationary_gap\n";
    f << cfg.benchmark << ',' << r.are.X.order() << ',' << cfg.solver << ','
      << cfg.reference << ',' << format_real(cfg.h) << ','
      << format_real(cfg.tf) << ',' << last << ','
      << format_real(r.are.abs_residual) << ','
      << format_real(r.are.rel_residual) << ',' << r.are.newton_iters << ','
      << r.model.dim() << ',' << format_real(r.model.projected_residual_norm)
      << ',' << format_real(r.model.full_residual_norm) << ','
      << format_real(max_rel2) << ',' << format_real(max_relF) << ','
      << format_real(final_m.rel2) << ',' << format_real(final_m.relF) << ','
      << format_real(stationary_gap(r.states[last], r.are)) << '\n';
    close_csv(f, p);
  }
  return dir;
}

fs::path compare_solvers(const std::vector<RunConfig>& cfgs_in,
                         const std::string& out) {
  if (cfgs_in.empty()) throw Error(ErrorCode::kConfig, "no configs given");
  std::vector<RunConfig> cfgs = cfgs_in;
  for (RunConfig& c : cfgs) c.validate();
  for (const RunConfig& c : cfgs) {
    if (c.benchmark != cfgs[0].benchmark || c.size != cfgs[0].size ||
        c.reference != cfgs[0].reference) {
      throw Error(ErrorCode::kMixedBenchmark,
                  "compare needs one benchmark, size and reference");
    }
  }
  const fs::path dir = output_dir(out.empty() ? cfgs[0].out : out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string());
  const fs::path p = dir / "compare.csv";
  std::ofstream f = open_csv(p);
  f << "solver,h,t,rel2,relF,abs2,absF,best_rel2,best_relF\n";
  for (const RunConfig& c : cfgs) {
    const RunResult r = execute(c);
    const Matrix& q = r.model.Q;
    for (std::size_t k = 0; k < r.states.size(); ++k) {
      const Metrics m = metrics_or_nan(r.states[k], r.reference[k]);
      const Matrix& xr = r.reference[k].matrix();
      const SymMatrix best(q * (q.transpose() * xr * q) * q.transpose());
      const Metrics b = metrics_or_nan(best, r.reference[k]);
      f << c.solver << ',' << format_real(c.h) << ','
        << format_real(r.times[k]) << ',' << format_real(m.rel2) << ','
        << format_real(m.relF) << ',' << format_real(m.abs2) << ','
        << format_real(m.absF) << ',' << format_real(b.rel2) << ','
        << format_real(b.relF) << '\n';
    }
    f.flush();
  }
  close_csv(f, p);
  return p;
}

void dump_benchmark(const std::string& name, Index size, const fs::path& dir) {
  const ProblemInstance inst = gen_benchmark(name, size);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string());
  auto dump = [&](const char* file, const Matrix& m) {
    const fs::path p = dir / file;
    std::ofstream f = open_csv(p);
    for (Index i = 0; i < m.rows(); ++i) {
      for (Index j = 0; j < m.cols(); ++j) {
        f << (j ? "," : "") << format_real(m(i, j));
      }
      f << '\n';
    }
    close_csv(f, p);
  };
  dump("A.csv", inst.system.A);
  dump("B.csv", inst.system.B);
  dump("C.csv", inst.system.C);
  dump("M.csv", inst.system.M);
  dump("X0.csv", inst.X0.matrix());
}

}  // namespace riccati
