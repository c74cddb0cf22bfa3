// riccati: experiment driver.
//   riccati run <config> [key=value ...]
//   riccati compare <config> [<config> ...] [--out DIR]
//   riccati gen <benchmark> --out DIR [--n N]
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "riccati/experiment.hpp"
#include "riccati/kernels.hpp"

namespace {

void write_error_record(const std::string& out, const riccati::Error& e) {
  if (out.empty()) return;
  std::error_code ec;
  const auto dir = riccati::output_dir(out);
  std::filesystem::create_directories(dir, ec);
  std::ofstream f(dir / "error.csv");
  if (!f) return;
  f << "code,step,value,message\n"
    << riccati::to_string(e.code()) << ','
    << (e.step() ? std::to_string(*e.step()) : "") << ','
    << (e.value() ? riccati::format_real(*e.value()) : "") << ",\""
    << e.what() << "\"\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differential Riccati equation experiments"};
  app.require_subcommand(1);

  std::string run_config;
  std::vector<std::string> run_overrides;
  auto* run = app.add_subcommand("run", "run one configured experiment");
  run->add_option("config", run_config, "key=value config file")->required();
  run->add_option("overrides", run_overrides, "key=value overrides");

  std::vector<std::string> compare_configs;
  std::string compare_out;
  auto* compare = app.add_subcommand("compare", "merge several runs");
  compare->add_option("configs", compare_configs, "config files")
      ->required();
  compare->add_option("--out", compare_out, "output directory");

  std::string gen_name;
  std::string gen_out;
  long gen_n = 20;
  auto* gen = app.add_subcommand("gen", "dump benchmark matrices as CSV");
  gen->add_option("benchmark", gen_name, "benchmark id")->required();
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_option("--n", gen_n, "size (n, or gridN for conv_diff)");

  CLI11_PARSE(app, argc, argv);

  std::string out_for_errors;
  try {
    if (run->parsed()) {
      riccati::RunConfig cfg = riccati::load_config(run_config);
      riccati::apply_overrides(cfg, run_overrides);
      out_for_errors = cfg.out;
      const auto dir = riccati::run_experiment(cfg);
      std::cout << dir.string() << '\n';
    } else if (compare->parsed()) {
      std::vector<riccati::RunConfig> cfgs;
      for (const auto& path : compare_configs) {
        cfgs.push_back(riccati::load_config(path));
      }
      out_for_errors = compare_out.empty() ? cfgs.front().out : compare_out;
      std::cout << riccati::compare_solvers(cfgs, compare_out).string()
                << '\n';
    } else if (gen->parsed()) {
      riccati::dump_benchmark(gen_name, gen_n, riccati::output_dir(gen_out));
    }
  } catch (const riccati::Error& e) {
    std::cerr << "error: " << e.what();
    if (e.step()) std::cerr << " [step " << *e.step() << ']';
    std::cerr << '\n';
    if (e.code() != riccati::ErrorCode::kConfig) {
      write_error_record(out_for_errors, e);
    }
    return riccati::exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
