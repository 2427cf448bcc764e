#include "ctd/fiber_basis.hpp"

#include <cmath>

#include "ctd/error.hpp"

namespace ctd {

FiberBasis::FiberBasis(index_t dim) : dim_(dim) {
  if (dim < 0) throw ArgumentError("basis dimension must be non-negative");
}

FiberBasis::FiberBasis(const SparseMatrix& r, DenseMatrix u)
    : dim_(r.rows()), u_(std::move(u)) {
  if (u_.rows() != r.cols() || u_.cols() != r.cols())
    throw ShapeError("inverse Gram factor does not match column count");
  columns_.reserve(static_cast<size_t>(r.cols()));
  for (index_t j = 0; j < r.cols(); ++j) columns_.push_back(r.column(j));
}

std::vector<double> FiberBasis::gram_coeffs(const SparseVec& x) const {
  std::vector<double> g(columns_.size(), 0.0);
  for (size_t k = 0; k < columns_.size(); ++k) {
    const SparseVec& c = columns_[k];
    double s = 0.0;
    size_t a = 0, b = 0;
    while (a < c.idx.size() && b < x.idx.size()) {
      if (c.idx[a] < x.idx[b]) {
        ++a;
      } else if (c.idx[a] > x.idx[b]) {
        ++b;
      } else {
        s += c.val[a] * x.val[b];
        ++a;
        ++b;
      }
    }
    g[k] = s;
  }
  return g;
}

FiberBasis::AppendResult FiberBasis::try_append_fiber(const SparseVec& x,
                                                      double epsilon) {
  if (x.dim != dim_) throw ShapeError("fiber length does not match basis");
  AppendResult result;

  const double x_sq = x.squared_norm();
  const std::vector<double> gram = gram_coeffs(x);   // R^T x
  result.y = u_.matvec(gram);                        // U R^T x

  // z = R y accumulated sparsely; the residual norm only needs the union
  // of supports of x and z.
  std::vector<double> z(static_cast<size_t>(dim_), 0.0);
  std::vector<index_t> touched;
  for (size_t k = 0; k < columns_.size(); ++k) {
    const double yk = result.y[k];
    if (yk == 0.0) continue;
    const SparseVec& c = columns_[k];
    for (size_t t = 0; t < c.idx.size(); ++t) {
      const size_t r = static_cast<size_t>(c.idx[t]);
      if (z[r] == 0.0) touched.push_back(c.idx[t]);
      z[r] += yk * c.val[t];
    }
  }
  double res_sq = 0.0;
  for (size_t t = 0; t < x.idx.size(); ++t) {
    const size_t r = static_cast<size_t>(x.idx[t]);
    const double d = x.val[t] - z[r];
    res_sq += d * d;
    z[r] = 0.0;  // consumed; remaining touched rows are pure -z terms
  }
  for (index_t r : touched) {
    const double zr = z[static_cast<size_t>(r)];
    res_sq += zr * zr;
    z[static_cast<size_t>(r)] = 0.0;
  }

  if (std::sqrt(res_sq) <= epsilon * std::sqrt(x_sq)) return result;

  // The block update divides by delta; a zero, non-finite, or
  // reciprocal-overflowing delta cannot drive it.
  const double delta = res_sq;
  if (!(delta > 0.0) || !std::isfinite(delta) ||
      !std::isfinite(1.0 / delta)) {
    result.degenerate = true;
    return result;
  }
  result.accepted = true;
  result.delta = delta;

  const index_t k = size();
  DenseMatrix next(k + 1, k + 1);
  for (index_t i = 0; i < k; ++i) {
    const double yi = result.y[static_cast<size_t>(i)];
    for (index_t j = 0; j <= i; ++j) {
      const double v =
          u_.at(i, j) + yi * result.y[static_cast<size_t>(j)] / delta;
      next.at(i, j) = v;
      next.at(j, i) = v;  // symmetric by construction
    }
    next.at(i, k) = -yi / delta;
    next.at(k, i) = -yi / delta;
  }
  next.at(k, k) = 1.0 / delta;
  u_ = std::move(next);
  columns_.push_back(x);
  return result;
}

SparseMatrix FiberBasis::to_matrix() const {
  std::vector<index_t> rows, cols;
  std::vector<double> vals;
  for (size_t j = 0; j < columns_.size(); ++j) {
    const SparseVec& c = columns_[j];
    for (size_t t = 0; t < c.idx.size(); ++t) {
      rows.push_back(c.idx[t]);
      cols.push_back(static_cast<index_t>(j));
      vals.push_back(c.val[t]);
    }
  }
  return SparseMatrix(dim_, static_cast<index_t>(columns_.size()),
                      std::move(rows), std::move(cols), std::move(vals));
}

}  // namespace ctd
