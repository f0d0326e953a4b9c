#pragma once

#include <string>
#include <vector>

#include "amglab/sparse.hpp"
#include "amglab/types.hpp"

namespace amglab {

/// Matrix Market coordinate format (real, general or symmetric).
/// Symmetric files store the lower triangle; readers mirror it.
void write_matrix_market(const std::string& path, const SparseMatrix& a,
                         bool symmetric,
                         const std::vector<std::string>& comments = {});
SparseMatrix read_matrix_market(const std::string& path);

/// Dense matrix as CSV, one row per line, with '#' comment header lines.
void write_csv(const std::string& path, const DenseMatrix& m,
               const std::vector<std::string>& comments = {},
               const std::string& column_header = "");

}  // namespace amglab
