#include "ctd/sparse_matrix.hpp"

#include <algorithm>
#include <numeric>

#include "ctd/error.hpp"

namespace ctd {

double SparseVec::squared_norm() const {
  double s = 0.0;
  for (double v : val) s += v * v;
  return s;
}

SparseMatrix::SparseMatrix(index_t rows, index_t cols)
    : rows_(rows), cols_(cols), col_ptr_(static_cast<size_t>(cols) + 1, 0) {
  if (rows < 0 || cols < 0)
    throw ArgumentError("matrix extents must be non-negative");
}

SparseMatrix::SparseMatrix(index_t rows, index_t cols,
                           std::vector<index_t> row_idx,
                           std::vector<index_t> col_idx,
                           std::vector<double> values)
    : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0)
    throw ArgumentError("matrix extents must be non-negative");
  const size_t count = values.size();
  if (row_idx.size() != count || col_idx.size() != count)
    throw ShapeError("matrix triple arrays differ in length");
  for (size_t i = 0; i < count; ++i) {
    if (row_idx[i] < 0 || row_idx[i] >= rows_ || col_idx[i] < 0 ||
        col_idx[i] >= cols_)
      throw ShapeError("matrix entry index out of bounds");
  }

  std::vector<size_t> perm(count);
  std::iota(perm.begin(), perm.end(), size_t{0});
  std::sort(perm.begin(), perm.end(), [&](size_t a, size_t b) {
    if (col_idx[a] != col_idx[b]) return col_idx[a] < col_idx[b];
    return row_idx[a] < row_idx[b];
  });

  col_ptr_.assign(static_cast<size_t>(cols_) + 1, 0);
  row_idx_.reserve(count);
  values_.reserve(count);
  size_t i = 0;
  while (i < count) {
    const index_t c = col_idx[perm[i]];
    const index_t r = row_idx[perm[i]];
    double sum = values[perm[i]];
    size_t j = i + 1;
    while (j < count && col_idx[perm[j]] == c && row_idx[perm[j]] == r) {
      sum += values[perm[j]];
      ++j;
    }
    if (sum != 0.0) {
      row_idx_.push_back(r);
      values_.push_back(sum);
      ++col_ptr_[static_cast<size_t>(c) + 1];
    }
    i = j;
  }
  for (size_t c = 0; c < static_cast<size_t>(cols_); ++c)
    col_ptr_[c + 1] += col_ptr_[c];
}

SparseVec SparseMatrix::column(index_t j) const {
  SparseVec v;
  v.dim = rows_;
  const auto r = column_rows(j);
  const auto x = column_values(j);
  v.idx.assign(r.begin(), r.end());
  v.val.assign(x.begin(), x.end());
  return v;
}

SparseMatrix SparseMatrix::transposed() const {
  std::vector<index_t> row_idx, col_idx;
  row_idx.reserve(values_.size());
  col_idx.reserve(values_.size());
  for (index_t j = 0; j < cols_; ++j) {
    for (size_t k = col_ptr_[static_cast<size_t>(j)];
         k < col_ptr_[static_cast<size_t>(j) + 1]; ++k) {
      row_idx.push_back(j);
      col_idx.push_back(row_idx_[k]);
    }
  }
  return SparseMatrix(cols_, rows_, std::move(row_idx), std::move(col_idx),
                      values_);
}

}  // namespace ctd
