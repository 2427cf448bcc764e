#include "ctd/dense_matrix.hpp"

#include <cmath>
#include <cstdlib>

#include "ctd/error.hpp"

namespace ctd {

DenseMatrix::DenseMatrix(index_t rows, index_t cols, double fill)
    : rows_(rows),
      cols_(cols),
      data_(static_cast<size_t>(rows) * static_cast<size_t>(cols), fill) {
  if (rows < 0 || cols < 0)
    throw ArgumentError("matrix extents must be non-negative");
}

DenseMatrix DenseMatrix::identity(index_t n) {
  DenseMatrix m(n, n);
  for (index_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

index_t DenseMatrix::nnz() const {
  index_t count = 0;
  for (double v : data_)
    if (v != 0.0) ++count;
  return count;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (index_t r = 0; r < rows_; ++r)
    for (index_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

std::vector<double> DenseMatrix::matvec(std::span<const double> x) const {
  if (static_cast<index_t>(x.size()) != cols_)
    throw ShapeError("matvec dimension mismatch");
  std::vector<double> y(static_cast<size_t>(rows_), 0.0);
  for (index_t r = 0; r < rows_; ++r) {
    double s = 0.0;
    const double* row = data_.data() + static_cast<size_t>(r * cols_);
    for (index_t c = 0; c < cols_; ++c) s += row[c] * x[static_cast<size_t>(c)];
    y[static_cast<size_t>(r)] = s;
  }
  return y;
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("matmul dimension mismatch");
  DenseMatrix out(a.rows(), b.cols());
  for (index_t i = 0; i < a.rows(); ++i) {
    for (index_t k = 0; k < a.cols(); ++k) {
      const double aik = a.at(i, k);
      if (aik == 0.0) continue;
      for (index_t j = 0; j < b.cols(); ++j)
        out.at(i, j) += aik * b.at(k, j);
    }
  }
  return out;
}

}  // namespace ctd
