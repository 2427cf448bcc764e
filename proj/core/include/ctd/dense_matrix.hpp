#pragma once

#include <span>
#include <vector>

#include "ctd/sparse_tensor.hpp"

namespace ctd {

/// Small row-major dense matrix. Holds the inverse-Gram factor and the
/// intermediate products of block updates; never used for tensor-sized data.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(index_t rows, index_t cols, double fill = 0.0);

  static DenseMatrix identity(index_t n);

  index_t rows() const { return rows_; }
  index_t cols() const { return cols_; }

  double at(index_t r, index_t c) const {
    return data_[static_cast<size_t>(r * cols_ + c)];
  }
  double& at(index_t r, index_t c) {
    return data_[static_cast<size_t>(r * cols_ + c)];
  }

  const std::vector<double>& data() const { return data_; }

  /// Count of entries that are not exactly zero.
  index_t nnz() const;

  DenseMatrix transposed() const;
  std::vector<double> matvec(std::span<const double> x) const;
  double max_abs() const;

  bool operator==(const DenseMatrix& other) const = default;

 private:
  index_t rows_ = 0;
  index_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace ctd
