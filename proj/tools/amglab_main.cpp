#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>

#include "CLI11.hpp"
#include "amglab/fv.hpp"
#include "amglab/io.hpp"
#include "amglab/runner.hpp"

namespace {

using namespace amglab;

void apply_overrides(ExperimentConfig& config, long long seed,
                     const std::string& out_dir) {
  if (seed >= 0) {
    config.problem.seed = static_cast<std::uint64_t>(seed);
    config.bamg.seed = config.problem.seed;
  }
  if (!out_dir.empty()) config.out_dir = out_dir;
}

int do_run(const std::string& config_path, long long seed,
           const std::string& out_dir) {
  ExperimentConfig config = parse_config_file(config_path);
  apply_overrides(config, seed, out_dir);
  run_experiment(config);
  std::printf("wrote %s\n",
              (std::filesystem::path(config.out_dir) / "rates.csv").c_str());
  return 0;
}

int do_reproduce(const std::string& id, const ReproduceOptions& options) {
  const auto rows = reproduce(id, options);
  int failed = 0;
  for (const auto& r : rows) {
    std::printf("[%s] %-16s %-3s k=%d N=%-4d computed=%-10.4g reference=%-10.4g %s\n",
                r.pass ? "PASS" : "FAIL", r.block.c_str(), r.problem.c_str(),
                r.k, static_cast<int>(r.n), r.computed, r.reference,
                r.note.c_str());
    failed += r.pass ? 0 : 1;
  }
  std::printf("%d/%zu comparisons passed; report in %s\n",
              static_cast<int>(rows.size()) - failed, rows.size(),
              options.out_dir.c_str());
  return 0;
}

int do_export_matrix(const std::string& config_path, long long seed,
                     const std::string& out_dir) {
  ExperimentConfig config = parse_config_file(config_path);
  apply_overrides(config, seed, out_dir);
  std::filesystem::create_directories(config.out_dir);
  const CoefficientField field =
      build_coefficient(config.problem.pattern, config.problem.n,
                        config.problem.k, config.problem.seed,
                        config.problem.geometry);
  const SparseMatrix a = assemble_fv(field);
  const auto base = std::filesystem::path(config.out_dir);
  write_matrix_market((base / "system.mtx").string(), a, true,
                      {std::string("amglab v") + kVersion,
                       canonical_config(config)});
  export_field_csv((base / "coefficient.csv").string(), field);
  std::printf("wrote %s and %s\n", (base / "system.mtx").c_str(),
              (base / "coefficient.csv").c_str());
  return 0;
}

int do_spectra(const std::string& config_path, long long seed,
               const std::string& out_dir) {
  ExperimentConfig config = parse_config_file(config_path);
  apply_overrides(config, seed, out_dir);
  config.methods = {"spectra"};
  run_experiment(config);
  std::printf("wrote %s\n",
              (std::filesystem::path(config.out_dir) / "spectra.csv").c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"amglab: two-grid convergence and bootstrap AMG setup laboratory"};
  app.require_subcommand(1);

  long long seed = -1;
  std::string out_dir;
  long long size_cap = 64;
  int threads = 1;
  int seeds = 3;
  app.add_option("--seed", seed, "override the experiment seed");
  app.add_option("--out-dir", out_dir, "output directory");
  app.add_option("--size-cap", size_cap, "largest grid dimension to run");
  app.add_option("--threads", threads, "worker threads for independent cells");

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "execute an experiment config");
  run_cmd->add_option("--config", config_path, "JSON experiment config")
      ->required();

  std::string table_id;
  auto* rep_cmd =
      app.add_subcommand("reproduce", "recompute a published table or figure");
  rep_cmd->add_option("id", table_id,
                      "one of table1, table2, fig2, fig3, fig4, fig5")
      ->required();
  rep_cmd->add_option("--seeds", seeds, "seed count for randomized problems");

  auto* exp_cmd = app.add_subcommand("export-matrix",
                                     "assemble the system and write Matrix Market");
  exp_cmd->add_option("--config", config_path, "JSON experiment config")
      ->required();

  auto* spc_cmd = app.add_subcommand("spectra", "matrix and pencil spectra CSV");
  spc_cmd->add_option("--config", config_path, "JSON experiment config")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return do_run(config_path, seed, out_dir);
    if (rep_cmd->parsed()) {
      ReproduceOptions options;
      options.size_cap = static_cast<amglab::Index>(size_cap);
      options.threads = threads;
      options.seeds = seeds;
      options.out_dir = out_dir.empty() ? "." : out_dir;
      return do_reproduce(table_id, options);
    }
    if (exp_cmd->parsed()) return do_export_matrix(config_path, seed, out_dir);
    if (spc_cmd->parsed()) return do_spectra(config_path, seed, out_dir);
  } catch (const amglab::DimensionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
