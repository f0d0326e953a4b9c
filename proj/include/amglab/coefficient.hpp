#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amglab/grid.hpp"
#include "amglab/types.hpp"

namespace amglab {

enum class Pattern { constant, p1, p2, p3, p4 };

Pattern pattern_from_string(const std::string& s);
std::string to_string(Pattern p);

enum class DrawGranularity { per_subdomain, per_cell };

/// Layout of the jump regions on a square subdomain lattice. With
/// cell_size > 0 each lattice unit is cell_size x cell_size grid cells; with
/// cell_size == 0 the unit square is divided into lattice x lattice physical
/// squares and cells sample the square containing their center.
///
/// Stripe patterns (p1/p3) fill every other lattice row with horizontal bars
/// kept clear of the boundary, so bars never touch each other or the domain
/// edge. Checkerboard patterns (p2/p4) mark alternating lattice squares over
/// the whole domain.
struct JumpGeometry {
  Index cell_size = 2;  // lattice unit in grid cells (0: physical lattice)
  Index lattice = 8;    // physical mode resolution
  Index dark_parity = 1;    // checkerboard square (r+c)%2 == dark_parity jumps
  Index stripe_margin = 1;  // clear lattice columns at the left/right edge
  Index bars_per_row = 1;   // rectangles per stripe row

  // randomized exponent draws (p3/p4)
  DrawGranularity granularity = DrawGranularity::per_subdomain;
  bool exponents_include_zero = false;  // k_ij in {0..k} instead of {1..k}
};

struct CoefficientField {
  Index N = 0;
  Pattern pattern = Pattern::constant;
  int k = 0;
  std::uint64_t seed = 0;
  JumpGeometry geometry;
  std::vector<double> a;  // N*N positive values, lexicographic (i fastest)

  double at(Index i, Index j) const { return a[j * N + i]; }
};

/// Builds the coefficient field for one of the jump patterns. p1/p2 place
/// the fixed value 10^-k on every jump cell; p3/p4 draw the exponent
/// uniformly at random per subdomain or per cell with the recorded seed.
CoefficientField build_coefficient(Pattern pattern, Index N, int k,
                                   std::uint64_t seed,
                                   const JumpGeometry& geometry = {});

/// Lattice-unit subdomain ids for the given grid size, -1 outside the jump
/// region. Indexed [row][column].
std::vector<std::vector<Index>> jump_subdomains(Pattern pattern, Index N,
                                                const JumpGeometry& geometry);

void export_field_csv(const std::string& path, const CoefficientField& field);

}  // namespace amglab
