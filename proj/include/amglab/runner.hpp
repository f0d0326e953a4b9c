#pragma once

#include <string>
#include <vector>

#include "amglab/config.hpp"
#include "amglab/types.hpp"

namespace amglab {

struct CellResult {
  std::string method;
  std::string problem;
  int k = 0;
  Index n = 0;
  std::string smoother;
  std::string coarsening;
  double estimate = 0.0;
  int iterations = 0;
  std::uint64_t seed = 0;
};

/// Executes every method named in the config against its problem; throws on
/// invalid input. Side outputs (spectra, maxvol sets, interpolation columns)
/// land in config.out_dir.
std::vector<CellResult> run_methods(const ExperimentConfig& config);

/// `run` verb: executes the config and writes rates.csv (plus per-method
/// side files) under config.out_dir.
void run_experiment(const ExperimentConfig& config);

/// One reproduced cell next to its published value.
struct Comparison {
  std::string block;
  std::string problem;
  int k = 0;
  Index n = 0;
  double computed = 0.0;
  double reference = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string note;
};

struct ReproduceOptions {
  Index size_cap = 64;
  int threads = 1;
  int seeds = 3;  // seed-averaged cells for the randomized problems
  std::string out_dir = ".";
};

/// Reproduces one of table1, table2, fig2, fig3, fig4, fig5 and writes a
/// side-by-side comparison CSV. Returns the comparison rows.
std::vector<Comparison> reproduce(const std::string& table_id,
                                  const ReproduceOptions& options);

void write_comparison_csv(const std::string& path,
                          const std::vector<Comparison>& rows,
                          const std::vector<std::string>& header_comments);

}  // namespace amglab
