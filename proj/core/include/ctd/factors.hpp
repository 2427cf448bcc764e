#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ctd/dense_matrix.hpp"
#include "ctd/sparse_matrix.hpp"
#include "ctd/sparse_tensor.hpp"

namespace ctd {

/// Identity of a kept fiber: its flat column index in the mode-alpha
/// matricization together with the decoded per-mode indices (all modes
/// except alpha, in increasing mode order). The decoding is what lets a
/// detector recover destination and time from a column of R.
struct FiberId {
  index_t flat = 0;
  std::vector<index_t> coords;

  bool operator==(const FiberId& other) const = default;
};

FiberId make_fiber_id(const std::vector<index_t>& shape, int mode, index_t flat);
index_t fiber_flat_index(const std::vector<index_t>& shape, int mode,
                         std::span<const index_t> coords);

/// The factor triple (C, U, R) of a mode-alpha decomposition plus its
/// provenance. R's columns are verbatim fibers of the decomposed tensor,
/// U tracks (R^T R)^-1, and the mode-alpha matricization of C equals
/// R^T X_(alpha) (exactly for a static run, approximately for a stream).
struct LRFactors {
  SparseTensor C;
  DenseMatrix U;
  SparseMatrix R;
  int mode = 0;
  std::vector<FiberId> kept_fibers;
  double epsilon = 0.0;
  std::uint64_t seed = 0;

  index_t kept_count() const { return static_cast<index_t>(kept_fibers.size()); }

  /// Shape of the decomposed tensor: C's shape with R.rows() at `mode`.
  std::vector<index_t> tensor_shape() const;

  bool operator==(const LRFactors& other) const = default;
};

}  // namespace ctd
