#pragma once

#include <vector>

#include "ctd/dense_matrix.hpp"
#include "ctd/sparse_matrix.hpp"
#include "ctd/sparse_tensor.hpp"

namespace ctd {

/// Values whose magnitude falls below this after a product are treated as
/// numerical zero and dropped, preserving sparsity.
inline constexpr double kDropTolerance = 1e-14;

/// Per-mode column strides of the mode-`mode` matricization: modes taken in
/// increasing order with `mode` skipped. stride[mode] is 0 by convention.
std::vector<index_t> fiber_strides(const std::vector<index_t>& shape, int mode);

/// Rearranges the mode-`mode` fibers of `x` as columns of a rows=extent(mode)
/// by cols=prod(other extents) matrix. nnz is preserved.
SparseMatrix matricize(const SparseTensor& x, int mode);

/// Inverse of matricize: fold(matricize(x, m), m, x.shape()) == x.
SparseTensor fold(const SparseMatrix& m, int mode, const std::vector<index_t>& shape);

/// Mode-`mode` product with a dense matrix (optionally transposed). The
/// result's mode-`mode` matricization equals op(u) * x_(mode).
SparseTensor n_mode_product(const SparseTensor& x, int mode, const DenseMatrix& u,
                            bool transpose = false);

/// Mode-`mode` product with a sparse matrix; keeps the result sparse.
SparseTensor n_mode_product(const SparseTensor& x, int mode, const SparseMatrix& u,
                            bool transpose = false);

double frobenius_norm(const SparseTensor& x);
double frobenius_norm(const SparseMatrix& m);

/// Squared Euclidean norm of every column; length equals cols().
std::vector<double> column_sq_norms(const SparseMatrix& m);

}  // namespace ctd
