#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amglab/bamg.hpp"
#include "amglab/coefficient.hpp"
#include "amglab/smoother.hpp"

namespace amglab {

struct ProblemConfig {
  Pattern pattern = Pattern::constant;
  Index n = 16;
  int k = 0;
  std::uint64_t seed = 1;
  JumpGeometry geometry;
};

enum class CoarseningKind { full, red_black };

/// Fully self-describing experiment description; a saved config reproduces
/// its outputs bit for bit on the same build.
struct ExperimentConfig {
  ProblemConfig problem;
  SmootherKind smoother = SmootherKind::gs_forward;
  Index block_size = 5;
  CoarseningKind coarsening = CoarseningKind::full;
  std::vector<std::string> methods;  // ideal optimal cr_frelax cr_sharp
                                     // kappa_sharp maxvol bamg spectra

  Index nc = -1;  // -1: from the coarsening
  int cr_iters = 5;
  int pcg_inner = 2;
  double rate_tol = 1e-4;
  int rate_max_iter = 2000;
  int maxvol_max_swaps = 0;  // 0: 20 * nc
  int bamg_solve_cycles = 20;
  BamgConfig bamg;

  std::string out_dir = ".";
};

ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& json_text);

/// Canonical single-line form used for hashing and output headers.
std::string canonical_config(const ExperimentConfig& c);
std::uint64_t config_hash(const ExperimentConfig& c);

}  // namespace amglab
