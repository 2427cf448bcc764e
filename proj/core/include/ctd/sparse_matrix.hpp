#pragma once

#include <span>
#include <vector>

#include "ctd/sparse_tensor.hpp"

namespace ctd {

/// Sparse column vector: sorted unique indices, no stored zeros.
struct SparseVec {
  index_t dim = 0;
  std::vector<index_t> idx;
  std::vector<double> val;

  index_t nnz() const { return static_cast<index_t>(idx.size()); }
  double squared_norm() const;
};

/// Two-dimensional coordinate-format sparse matrix.
///
/// Stored compressed by column (entries ordered by column, then row),
/// coalesced, no explicit zeros. Immutable after construction.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(index_t rows, index_t cols);

  /// Build from COO triples; duplicates summed, zeros dropped.
  SparseMatrix(index_t rows, index_t cols, std::vector<index_t> row_idx,
               std::vector<index_t> col_idx, std::vector<double> values);

  index_t rows() const { return rows_; }
  index_t cols() const { return cols_; }
  index_t nnz() const { return static_cast<index_t>(values_.size()); }

  std::span<const index_t> column_rows(index_t j) const {
    return {row_idx_.data() + col_ptr_[static_cast<size_t>(j)],
            row_idx_.data() + col_ptr_[static_cast<size_t>(j) + 1]};
  }
  std::span<const double> column_values(index_t j) const {
    return {values_.data() + col_ptr_[static_cast<size_t>(j)],
            values_.data() + col_ptr_[static_cast<size_t>(j) + 1]};
  }
  index_t column_nnz(index_t j) const {
    return static_cast<index_t>(col_ptr_[static_cast<size_t>(j) + 1] -
                                col_ptr_[static_cast<size_t>(j)]);
  }
  SparseVec column(index_t j) const;

  const std::vector<index_t>& row_indices() const { return row_idx_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<std::size_t>& column_pointers() const { return col_ptr_; }

  SparseMatrix transposed() const;

  bool operator==(const SparseMatrix& other) const = default;

 private:
  index_t rows_ = 0;
  index_t cols_ = 0;
  std::vector<std::size_t> col_ptr_;  // size cols + 1
  std::vector<index_t> row_idx_;
  std::vector<double> values_;
};

}  // namespace ctd
