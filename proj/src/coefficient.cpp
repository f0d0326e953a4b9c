#include "amglab/coefficient.hpp"

#include <algorithm>
#include <cmath>

#include "amglab/io.hpp"
#include "amglab/rng.hpp"

namespace amglab {

Pattern pattern_from_string(const std::string& s) {
  if (s == "constant" || s == "poisson") return Pattern::constant;
  if (s == "P1" || s == "p1") return Pattern::p1;
  if (s == "P2" || s == "p2") return Pattern::p2;
  if (s == "P3" || s == "p3") return Pattern::p3;
  if (s == "P4" || s == "p4") return Pattern::p4;
  throw DimensionError("unknown coefficient pattern: " + s);
}

std::string to_string(Pattern p) {
  switch (p) {
    case Pattern::constant: return "constant";
    case Pattern::p1: return "P1";
    case Pattern::p2: return "P2";
    case Pattern::p3: return "P3";
    case Pattern::p4: return "P4";
  }
  return "?";
}

namespace {

Index lattice_dim(Index N, const JumpGeometry& geo) {
  if (geo.cell_size > 0) return (N + geo.cell_size - 1) / geo.cell_size;
  return geo.lattice;
}

// lattice coordinate of a cell (0-based index per dimension)
Index unit_of(Index cell, Index N, const JumpGeometry& geo) {
  if (geo.cell_size > 0) return cell / geo.cell_size;
  const double x = (cell + 0.5) / N;
  return std::min<Index>(static_cast<Index>(x * geo.lattice), geo.lattice - 1);
}

}  // namespace

std::vector<std::vector<Index>> jump_subdomains(Pattern pattern, Index N,
                                                const JumpGeometry& geo) {
  const Index s = lattice_dim(N, geo);
  std::vector<std::vector<Index>> id(s, std::vector<Index>(s, -1));
  if (pattern == Pattern::constant) return id;

  Index next = 0;
  if (pattern == Pattern::p1 || pattern == Pattern::p3) {
    const Index lo = geo.stripe_margin;
    const Index hi = s - 1 - geo.stripe_margin;
    if (hi < lo) return id;
    const Index span = hi - lo + 1;
    const Index bars = std::max<Index>(1, geo.bars_per_row);
    const Index usable = span - (bars - 1);
    for (Index r = 1; r < s; r += 2) {
      // keep the bar off the top boundary
      if (geo.cell_size > 0 && (r + 1) * geo.cell_size >= N) continue;
      if (geo.cell_size == 0 && r == s - 1) continue;
      Index c = lo;
      for (Index bidx = 0; bidx < bars; ++bidx) {
        const Index w = usable / bars + (bidx < usable % bars ? 1 : 0);
        for (Index cc = c; cc < c + w && cc <= hi; ++cc) id[r][cc] = next;
        ++next;
        c += w + 1;
      }
    }
  } else {  // p2/p4 checkerboard
    for (Index r = 0; r < s; ++r)
      for (Index c = 0; c < s; ++c)
        if ((r + c) % 2 == geo.dark_parity % 2) id[r][c] = next++;
  }
  return id;
}

CoefficientField build_coefficient(Pattern pattern, Index N, int k,
                                   std::uint64_t seed,
                                   const JumpGeometry& geo) {
  if (N < 2) throw DimensionError("build_coefficient: N must be at least 2");
  if (k < 0) throw DimensionError("build_coefficient: k must be nonnegative");

  CoefficientField field;
  field.N = N;
  field.pattern = pattern;
  field.k = k;
  field.seed = seed;
  field.geometry = geo;
  field.a.assign(static_cast<std::size_t>(N) * N, 1.0);
  if (pattern == Pattern::constant || k == 0) return field;

  const auto sub = jump_subdomains(pattern, N, geo);
  const bool random_draws = pattern == Pattern::p3 || pattern == Pattern::p4;
  const int k_lo = geo.exponents_include_zero ? 0 : 1;

  Rng rng = Rng(seed).split(0x636f6566u);  // coefficient stream

  // one exponent per subdomain, drawn in subdomain-id order
  std::vector<int> sub_exponent;
  if (random_draws && geo.granularity == DrawGranularity::per_subdomain) {
    Index count = 0;
    for (const auto& row : sub)
      for (Index v : row) count = std::max(count, v + 1);
    sub_exponent.resize(count);
    for (Index i = 0; i < count; ++i)
      sub_exponent[i] = static_cast<int>(rng.uniform_int(k_lo, k));
  }

  for (Index j = 0; j < N; ++j) {
    const Index r = unit_of(j, N, geo);
    for (Index i = 0; i < N; ++i) {
      const Index c = unit_of(i, N, geo);
      const Index sid = sub[r][c];
      if (sid < 0) continue;
      int exponent = k;
      if (random_draws) {
        exponent = geo.granularity == DrawGranularity::per_subdomain
                       ? sub_exponent[sid]
                       : static_cast<int>(rng.uniform_int(k_lo, k));
      }
      field.a[j * N + i] = std::pow(10.0, -exponent);
    }
  }
  return field;
}

void export_field_csv(const std::string& path, const CoefficientField& field) {
  DenseMatrix m(field.N, field.N);
  for (Index j = 0; j < field.N; ++j)
    for (Index i = 0; i < field.N; ++i) m(j, i) = field.at(i, j);  // row = y
  write_csv(path, m,
            {"coefficient field", "pattern=" + to_string(field.pattern),
             "N=" + std::to_string(field.N), "k=" + std::to_string(field.k),
             "seed=" + std::to_string(field.seed)});
}

}  // namespace amglab
