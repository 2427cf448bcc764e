#pragma once

#include <vector>

#include "ctd/dense_matrix.hpp"
#include "ctd/sparse_matrix.hpp"

namespace ctd {

/// Incrementally grown pair (R, U) where R holds linearly independent
/// columns and U tracks (R^T R)^-1 through rank-one block updates.
///
/// A candidate column x is accepted when its residual against span(R)
/// exceeds epsilon * |x|; acceptance appends x to R and updates U as
///
///   U <- [[U + y y^T / delta, -y / delta], [-y^T / delta, 1 / delta]]
///
/// with y = U R^T x and delta = |x - R U R^T x|^2. On an empty basis the
/// residual is x itself, so the first nonzero column is always accepted
/// and U starts as [1 / (x^T x)].
class FiberBasis {
 public:
  /// Empty basis over columns of length `dim`.
  explicit FiberBasis(index_t dim);

  /// Resume from existing factors; R's columns must be independent and
  /// u must be their inverse Gram matrix.
  FiberBasis(const SparseMatrix& r, DenseMatrix u);

  struct AppendResult {
    bool accepted = false;
    /// Passed the residual test but produced delta <= 0 (floating-point
    /// degeneracy); the candidate is rejected and the basis unchanged.
    bool degenerate = false;
    double delta = 0.0;
    std::vector<double> y;  // U R^T x at decision time
  };

  /// Residual test and conditional append. The basis is unchanged on
  /// rejection. R U R^T x is evaluated right to left as three
  /// matrix-vector products; R U R^T is never formed.
  AppendResult try_append_fiber(const SparseVec& x, double epsilon);

  index_t dim() const { return dim_; }
  index_t size() const { return static_cast<index_t>(columns_.size()); }

  const DenseMatrix& inverse_gram() const { return u_; }
  const SparseVec& column(index_t k) const {
    return columns_[static_cast<size_t>(k)];
  }

  /// Kept columns assembled as a sparse matrix, acceptance order.
  SparseMatrix to_matrix() const;

 private:
  std::vector<double> gram_coeffs(const SparseVec& x) const;  // R^T x

  index_t dim_ = 0;
  std::vector<SparseVec> columns_;
  DenseMatrix u_;
};

}  // namespace ctd
