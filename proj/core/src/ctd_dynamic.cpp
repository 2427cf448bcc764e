#include "ctd/ctd_dynamic.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "ctd/error.hpp"
#include "ctd/sampling.hpp"
#include "ctd/tensor_ops.hpp"

namespace ctd {

namespace {

/// Stacks blocks [[top_left, top_right], [bottom_left, bottom_right]] into
/// one sparse matrix. Bottom blocks may have zero rows; right and left
/// column counts must agree per side.
SparseMatrix assemble_blocks(const SparseMatrix& tl, const SparseMatrix& tr,
                             const SparseMatrix& bl, const SparseMatrix& br) {
  const index_t top_rows = tl.rows();
  const index_t bottom_rows = bl.rows();
  const index_t left_cols = tl.cols();
  if (tr.rows() != top_rows || br.rows() != bottom_rows ||
      bl.cols() != left_cols || tr.cols() != br.cols())
    throw ShapeError("core block dimensions are inconsistent");

  std::vector<index_t> rows, cols;
  std::vector<double> vals;
  rows.reserve(static_cast<size_t>(tl.nnz() + tr.nnz() + bl.nnz() + br.nnz()));
  cols.reserve(rows.capacity());
  vals.reserve(rows.capacity());
  const auto append = [&](const SparseMatrix& m, index_t row_off,
                          index_t col_off) {
    for (index_t j = 0; j < m.cols(); ++j) {
      const auto cr = m.column_rows(j);
      const auto cv = m.column_values(j);
      for (size_t t = 0; t < cr.size(); ++t) {
        rows.push_back(cr[t] + row_off);
        cols.push_back(j + col_off);
        vals.push_back(cv[t]);
      }
    }
  };
  append(tl, 0, 0);
  append(tr, 0, left_cols);
  append(bl, top_rows, 0);
  append(br, top_rows, left_cols);
  return SparseMatrix(top_rows + bottom_rows, left_cols + tr.cols(),
                      std::move(rows), std::move(cols), std::move(vals));
}

/// A^T B as a sparse matrix via pairwise sparse dot products.
SparseMatrix transpose_times(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows()) throw ShapeError("inner dimensions differ");
  std::vector<index_t> rows, cols;
  std::vector<double> vals;
  for (index_t i = 0; i < a.cols(); ++i) {
    const auto ar = a.column_rows(i);
    const auto av = a.column_values(i);
    for (index_t j = 0; j < b.cols(); ++j) {
      const auto br = b.column_rows(j);
      const auto bv = b.column_values(j);
      double s = 0.0;
      size_t p = 0, q = 0;
      while (p < ar.size() && q < br.size()) {
        if (ar[p] < br[q]) {
          ++p;
        } else if (ar[p] > br[q]) {
          ++q;
        } else {
          s += av[p] * bv[q];
          ++p;
          ++q;
        }
      }
      if (std::abs(s) >= kDropTolerance) {
        rows.push_back(i);
        cols.push_back(j);
        vals.push_back(s);
      }
    }
  }
  return SparseMatrix(a.cols(), b.cols(), std::move(rows), std::move(cols),
                      std::move(vals));
}

SparseTensor concatenate_time(const SparseTensor& head,
                              const SparseTensor& slab) {
  std::vector<index_t> shape = head.shape();
  const size_t time = shape.size() - 1;
  const index_t offset = shape[time];
  shape[time] += slab.extent(static_cast<int>(time));
  std::vector<index_t> indices = head.indices();
  std::vector<double> values = head.values();
  const size_t n = shape.size();
  for (index_t i = 0; i < slab.nnz(); ++i) {
    const auto idx = slab.index(i);
    for (size_t k = 0; k < n; ++k)
      indices.push_back(k == time ? idx[k] + offset : idx[k]);
    values.push_back(slab.value(i));
  }
  return SparseTensor(std::move(shape), std::move(indices), std::move(values));
}

}  // namespace

index_t StreamState::slab_columns() const {
  index_t p = 1;
  for (size_t k = 0; k < slab_shape.size(); ++k)
    if (static_cast<int>(k) != mode) p *= slab_shape[k];
  return p;
}

LRFactors StreamState::factors() const {
  LRFactors f;
  f.mode = mode;
  f.epsilon = epsilon;
  f.seed = seed;
  f.kept_fibers = kept_fibers;
  f.R = basis.to_matrix();
  f.U = basis.inverse_gram();
  std::vector<index_t> core_shape(slab_shape);
  core_shape[static_cast<size_t>(mode)] = basis.size();
  core_shape.push_back(t);
  f.C = fold(core, mode, core_shape);
  return f;
}

StreamState init_stream(const SparseTensor& historical, int mode,
                        index_t sample_size, double epsilon,
                        std::uint64_t seed, bool keep_history,
                        bool exact_core) {
  if (historical.order() < 2)
    throw ArgumentError("a stream needs at least one non-time mode");
  if (mode < 0 || mode >= historical.order() - 1)
    throw ArgumentError("mode must precede the time mode");
  LRFactors f = ctd_s(historical, mode, sample_size, epsilon, seed);

  StreamState state{FiberBasis(f.R, f.U), matricize(f.C, mode),
                    historical.shape(), mode,
                    historical.shape().back(), epsilon,
                    seed, std::move(f.kept_fibers)};
  state.slab_shape.pop_back();
  state.exact_core = exact_core;
  if (keep_history || exact_core) state.history = historical;
  return state;
}

StreamState ctd_d_step(StreamState state, const SparseTensor& slab,
                       index_t sample_size) {
  if (slab.order() != static_cast<int>(state.slab_shape.size()) + 1)
    throw ShapeError("slab order does not match the stream");
  for (size_t k = 0; k < state.slab_shape.size(); ++k)
    if (slab.extent(static_cast<int>(k)) != state.slab_shape[k])
      throw ShapeError("slab extents do not match the stream");
  if (slab.shape().back() != 1)
    throw ShapeError("slab must have time extent 1");
  if (sample_size < 1) throw ArgumentError("sample size must be at least 1");

  const SparseMatrix delta = matricize(slab, state.mode);
  const index_t delta_cols = delta.cols();

  // Snapshot R^(t), U^(t): the core update uses the factors from before
  // this step's appends.
  const SparseMatrix r_old = state.basis.to_matrix();
  const DenseMatrix u_old = state.basis.inverse_gram();

  std::vector<index_t> grown_shape(state.slab_shape);
  grown_shape.push_back(state.t + 1);

  std::vector<SparseVec> appended;
  std::vector<index_t> appended_cols;
  if (slab.nnz() > 0) {
    const ColumnDistribution dist = column_distribution(delta);
    const std::vector<index_t> drawn = sample_with_replacement(
        dist, sample_size,
        state.seed ^ static_cast<std::uint64_t>(state.t));
    for (index_t j : unique_first_occurrence(drawn)) {
      const SparseVec x = delta.column(j);
      const auto result = state.basis.try_append_fiber(x, state.epsilon);
      if (result.accepted) {
        appended.push_back(x);
        appended_cols.push_back(j);
        state.kept_fibers.push_back(make_fiber_id(
            grown_shape, state.mode, j + state.t * delta_cols));
      }
    }
  }

  const SparseMatrix top_right = transpose_times(r_old, delta);

  if (appended.empty()) {
    SparseMatrix bottom_left(0, state.core.cols());
    SparseMatrix bottom_right(0, delta_cols);
    state.core =
        assemble_blocks(state.core, top_right, bottom_left, bottom_right);
  } else {
    std::vector<index_t> rows, cols;
    std::vector<double> vals;
    for (size_t j = 0; j < appended.size(); ++j) {
      for (size_t v = 0; v < appended[j].idx.size(); ++v) {
        rows.push_back(appended[j].idx[v]);
        cols.push_back(static_cast<index_t>(j));
        vals.push_back(appended[j].val[v]);
      }
    }
    const SparseMatrix delta_r(state.basis.dim(),
                               static_cast<index_t>(appended.size()),
                               std::move(rows), std::move(cols),
                               std::move(vals));
    SparseMatrix bottom_left(0, 0);
    if (state.exact_core) {
      if (!state.history)
        throw ArgumentError("exact core update requires retained history");
      bottom_left =
          transpose_times(delta_r, matricize(*state.history, state.mode));
    } else {
      bottom_left = chain_product(delta_r, r_old, u_old, state.core);
    }
    const SparseMatrix bottom_right = transpose_times(delta_r, delta);
    state.core =
        assemble_blocks(state.core, top_right, bottom_left, bottom_right);
  }

  if (state.history)
    state.history = concatenate_time(*state.history, slab);
  state.t += 1;
  return state;
}

SparseMatrix chain_product(const SparseMatrix& delta_r, const SparseMatrix& r,
                           const DenseMatrix& u, const SparseMatrix& core) {
  const SparseMatrix gram = transpose_times(delta_r, r);  // (dR^T R)
  if (gram.cols() != u.rows() || u.cols() != core.rows())
    throw ShapeError("chain product dimension mismatch");

  // (dR^T R) U, small and dense.
  DenseMatrix left(gram.rows(), u.cols());
  for (index_t j = 0; j < gram.cols(); ++j) {
    const auto cr = gram.column_rows(j);
    const auto cv = gram.column_values(j);
    for (size_t t = 0; t < cr.size(); ++t)
      for (index_t c = 0; c < u.cols(); ++c)
        left.at(cr[t], c) += cv[t] * u.at(j, c);
  }

  // ((dR^T R) U) C, sparse by columns of C.
  std::vector<index_t> rows, cols;
  std::vector<double> vals;
  std::vector<double> acc(static_cast<size_t>(left.rows()), 0.0);
  for (index_t j = 0; j < core.cols(); ++j) {
    const auto cr = core.column_rows(j);
    const auto cv = core.column_values(j);
    if (cr.empty()) continue;
    std::fill(acc.begin(), acc.end(), 0.0);
    for (size_t t = 0; t < cr.size(); ++t)
      for (index_t i = 0; i < left.rows(); ++i)
        acc[static_cast<size_t>(i)] += left.at(i, cr[t]) * cv[t];
    for (index_t i = 0; i < left.rows(); ++i) {
      if (std::abs(acc[static_cast<size_t>(i)]) >= kDropTolerance) {
        rows.push_back(i);
        cols.push_back(j);
        vals.push_back(acc[static_cast<size_t>(i)]);
      }
    }
  }
  return SparseMatrix(left.rows(), core.cols(), std::move(rows),
                      std::move(cols), std::move(vals));
}

double core_drift(const StreamState& state) {
  if (!state.history)
    throw ArgumentError("core drift requires retained history");
  const SparseMatrix expected =
      transpose_times(state.basis.to_matrix(),
                      matricize(*state.history, state.mode));
  // Frobenius norm of (core - expected) by merged column sweep.
  double sq = 0.0;
  for (index_t j = 0; j < state.core.cols(); ++j) {
    const auto ar = state.core.column_rows(j);
    const auto av = state.core.column_values(j);
    const auto br = expected.column_rows(j);
    const auto bv = expected.column_values(j);
    size_t p = 0, q = 0;
    while (p < ar.size() || q < br.size()) {
      if (q == br.size() || (p < ar.size() && ar[p] < br[q])) {
        sq += av[p] * av[p];
        ++p;
      } else if (p == ar.size() || br[q] < ar[p]) {
        sq += bv[q] * bv[q];
        ++q;
      } else {
        const double d = av[p] - bv[q];
        sq += d * d;
        ++p;
        ++q;
      }
    }
  }
  return std::sqrt(sq);
}

}  // namespace ctd
