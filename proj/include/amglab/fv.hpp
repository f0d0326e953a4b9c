#pragma once

#include "amglab/coefficient.hpp"
#include "amglab/sparse.hpp"

namespace amglab {

/// Cell-centered finite volume matrix for -div(a grad u) with homogeneous
/// Dirichlet boundary, assembled with the SPD sign convention: positive
/// diagonal a_e+a_w+a_n+a_s, off-diagonals -a_*. Interior face coefficients
/// are harmonic averages 2*a1*a2/(a1+a2); a boundary face contributes
/// 2*a_cell to the diagonal (half-cell distance to the boundary value).
SparseMatrix assemble_fv(const CoefficientField& field);

}  // namespace amglab
