#pragma once

#include <span>
#include <string>

namespace amglab {

/// One published reference value, identified by table block and cell.
struct RefCell {
  const char* block;    // "ideal", "sharp_cr", "frelax_cr", "optimal",
                        // "bamg_msymm", "bamg_identity"
  const char* problem;  // "P1".."P4"
  int k;
  int n;                // grid cells per dimension
  double value;
};

std::span<const RefCell> reference_rates();

/// Looks up a cell; throws if absent.
double reference_rate(const std::string& block, const std::string& problem,
                      int k, int n);

/// Reference condition numbers of the maxvol-selected coarse block.
struct RefMaxvol {
  const char* problem;
  const char* smoother;
  int k;
  int n;
  int nc;
  double cond;
};

std::span<const RefMaxvol> reference_maxvol();

// Scalar references quoted in the surrounding text.
inline constexpr double kPoissonOptimalBound = 0.14;     // full coarsening
inline constexpr double kRedBlackIdealRate = 0.250;      // P4, any k and h
inline constexpr double kRedBlackSharpEstimate = 0.248;  // P4 k=8, N=32, L=2

}  // namespace amglab
