#include "ctd/tensor_ops.hpp"

#include <cmath>
#include <string>

#include "ctd/error.hpp"

namespace ctd {

namespace {

void check_mode(int mode, int order) {
  if (mode < 0 || mode >= order)
    throw ArgumentError("mode " + std::to_string(mode) +
                        " out of range for order " + std::to_string(order));
}

index_t other_extent_product(const std::vector<index_t>& shape, int mode) {
  index_t p = 1;
  for (size_t k = 0; k < shape.size(); ++k)
    if (static_cast<int>(k) != mode) p *= shape[k];
  return p;
}

/// Shared sparse * sparse column sweep: out = m * x where columns of x are
/// processed against m's columns indexed by x's row values.
SparseMatrix multiply_columns(const SparseMatrix& m, const SparseMatrix& x) {
  if (m.cols() != x.rows())
    throw ShapeError("matrix product dimension mismatch");
  std::vector<index_t> rows, cols;
  std::vector<double> vals;
  std::vector<double> acc(static_cast<size_t>(m.rows()), 0.0);
  std::vector<index_t> touched;
  for (index_t j = 0; j < x.cols(); ++j) {
    const auto xr = x.column_rows(j);
    const auto xv = x.column_values(j);
    for (size_t t = 0; t < xr.size(); ++t) {
      const auto mr = m.column_rows(xr[t]);
      const auto mv = m.column_values(xr[t]);
      for (size_t u = 0; u < mr.size(); ++u) {
        const size_t r = static_cast<size_t>(mr[u]);
        if (acc[r] == 0.0) touched.push_back(mr[u]);
        acc[r] += mv[u] * xv[t];
      }
    }
    for (index_t r : touched) {
      const double v = acc[static_cast<size_t>(r)];
      if (std::abs(v) >= kDropTolerance) {
        rows.push_back(r);
        cols.push_back(j);
        vals.push_back(v);
      }
      acc[static_cast<size_t>(r)] = 0.0;
    }
    touched.clear();
  }
  return SparseMatrix(m.rows(), x.cols(), std::move(rows), std::move(cols),
                      std::move(vals));
}

SparseMatrix multiply_columns(const DenseMatrix& m, const SparseMatrix& x) {
  if (m.cols() != x.rows())
    throw ShapeError("matrix product dimension mismatch");
  std::vector<index_t> rows, cols;
  std::vector<double> vals;
  std::vector<double> acc(static_cast<size_t>(m.rows()), 0.0);
  for (index_t j = 0; j < x.cols(); ++j) {
    const auto xr = x.column_rows(j);
    const auto xv = x.column_values(j);
    if (xr.empty()) continue;
    std::fill(acc.begin(), acc.end(), 0.0);
    for (size_t t = 0; t < xr.size(); ++t) {
      const double v = xv[t];
      const index_t k = xr[t];
      for (index_t r = 0; r < m.rows(); ++r) acc[static_cast<size_t>(r)] += m.at(r, k) * v;
    }
    for (index_t r = 0; r < m.rows(); ++r) {
      const double v = acc[static_cast<size_t>(r)];
      if (std::abs(v) >= kDropTolerance) {
        rows.push_back(r);
        cols.push_back(j);
        vals.push_back(v);
      }
    }
  }
  return SparseMatrix(m.rows(), x.cols(), std::move(rows), std::move(cols),
                      std::move(vals));
}

template <typename Matrix>
SparseTensor n_mode_product_impl(const SparseTensor& x, int mode,
                                 const Matrix& u, bool transpose) {
  check_mode(mode, x.order());
  const Matrix op = transpose ? u.transposed() : u;
  if (op.cols() != x.extent(mode))
    throw ShapeError("n-mode product dimension mismatch");
  const SparseMatrix unfolded = matricize(x, mode);
  const SparseMatrix product = multiply_columns(op, unfolded);
  std::vector<index_t> shape = x.shape();
  shape[static_cast<size_t>(mode)] = op.rows();
  return fold(product, mode, shape);
}

}  // namespace

std::vector<index_t> fiber_strides(const std::vector<index_t>& shape, int mode) {
  check_mode(mode, static_cast<int>(shape.size()));
  std::vector<index_t> strides(shape.size(), 0);
  index_t acc = 1;
  for (size_t k = 0; k < shape.size(); ++k) {
    if (static_cast<int>(k) == mode) continue;
    strides[k] = acc;
    acc *= shape[k];
  }
  return strides;
}

SparseMatrix matricize(const SparseTensor& x, int mode) {
  check_mode(mode, x.order());
  const auto& shape = x.shape();
  const auto strides = fiber_strides(shape, mode);
  const index_t cols = other_extent_product(shape, mode);
  const index_t nnz = x.nnz();
  std::vector<index_t> rows(static_cast<size_t>(nnz));
  std::vector<index_t> col_idx(static_cast<size_t>(nnz));
  for (index_t i = 0; i < nnz; ++i) {
    const auto idx = x.index(i);
    index_t j = 0;
    for (size_t k = 0; k < idx.size(); ++k) j += idx[k] * strides[k];
    rows[static_cast<size_t>(i)] = idx[static_cast<size_t>(mode)];
    col_idx[static_cast<size_t>(i)] = j;
  }
  return SparseMatrix(x.extent(mode), cols, std::move(rows),
                      std::move(col_idx), x.values());
}

SparseTensor fold(const SparseMatrix& m, int mode,
                  const std::vector<index_t>& shape) {
  const int order = static_cast<int>(shape.size());
  check_mode(mode, order);
  if (m.rows() != shape[static_cast<size_t>(mode)] ||
      m.cols() != other_extent_product(shape, mode))
    throw ShapeError("matrix dimensions inconsistent with fold shape");
  const auto strides = fiber_strides(shape, mode);
  const size_t n = shape.size();
  std::vector<index_t> indices;
  indices.reserve(static_cast<size_t>(m.nnz()) * n);
  std::vector<double> values;
  values.reserve(static_cast<size_t>(m.nnz()));
  std::vector<index_t> idx(n);
  for (index_t j = 0; j < m.cols(); ++j) {
    const auto cr = m.column_rows(j);
    const auto cv = m.column_values(j);
    if (cr.empty()) continue;
    index_t rem = j;
    // Decode the column index back into per-mode coordinates; largest
    // stride last, so divide from the trailing mode down.
    for (size_t k = n; k-- > 0;) {
      if (static_cast<int>(k) == mode) continue;
      idx[k] = rem / strides[k];
      rem %= strides[k];
    }
    for (size_t t = 0; t < cr.size(); ++t) {
      idx[static_cast<size_t>(mode)] = cr[t];
      indices.insert(indices.end(), idx.begin(), idx.end());
      values.push_back(cv[t]);
    }
  }
  return SparseTensor(shape, std::move(indices), std::move(values));
}

SparseTensor n_mode_product(const SparseTensor& x, int mode,
                            const DenseMatrix& u, bool transpose) {
  return n_mode_product_impl(x, mode, u, transpose);
}

SparseTensor n_mode_product(const SparseTensor& x, int mode,
                            const SparseMatrix& u, bool transpose) {
  return n_mode_product_impl(x, mode, u, transpose);
}

double frobenius_norm(const SparseTensor& x) {
  double s = 0.0;
  for (double v : x.values()) s += v * v;
  return std::sqrt(s);
}

double frobenius_norm(const SparseMatrix& m) {
  double s = 0.0;
  for (double v : m.values()) s += v * v;
  return std::sqrt(s);
}

std::vector<double> column_sq_norms(const SparseMatrix& m) {
  std::vector<double> norms(static_cast<size_t>(m.cols()), 0.0);
  for (index_t j = 0; j < m.cols(); ++j) {
    double s = 0.0;
    for (double v : m.column_values(j)) s += v * v;
    norms[static_cast<size_t>(j)] = s;
  }
  return norms;
}

}  // namespace ctd
