#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ctd/ctd_static.hpp"
#include "ctd/factors.hpp"
#include "ctd/fiber_basis.hpp"
#include "ctd/sparse_matrix.hpp"
#include "ctd/sparse_tensor.hpp"

namespace ctd {

/// Factors of a growing tensor, updated slab by slab. The time mode is
/// always the last mode; `mode` (alpha) must be one of the others. The core
/// is held in matricized form between steps and folded on demand.
struct StreamState {
  FiberBasis basis;             // R^(t), U^(t)
  SparseMatrix core;            // C_(alpha)^(t): basis.size() x (t * slab_columns())
  std::vector<index_t> slab_shape;  // extents of the non-time modes
  int mode = 0;
  index_t t = 0;                // slabs consumed = time extent of the core
  double epsilon = kDefaultEpsilon;
  std::uint64_t seed = kDefaultSeed;
  std::vector<FiberId> kept_fibers;

  /// When set, the bottom-left core block is recomputed from the retained
  /// raw history instead of substituting R U C for X_(alpha). Requires
  /// `history`. Off by default: the stream does not keep its input.
  bool exact_core = false;
  std::optional<SparseTensor> history;

  /// Columns contributed by one slab's mode-alpha matricization.
  index_t slab_columns() const;

  /// Folds the core and packages (C, U, R) with provenance.
  LRFactors factors() const;
};

/// Bootstraps a stream by decomposing the historical tensor with ctd_s.
StreamState init_stream(const SparseTensor& historical, int mode,
                        index_t sample_size, double epsilon = kDefaultEpsilon,
                        std::uint64_t seed = kDefaultSeed,
                        bool keep_history = false, bool exact_core = false);

/// Consumes one incoming slab (time extent 1): samples `sample_size` of its
/// fibers, appends the independent ones to R/U, and extends the core with
/// the block update
///
///   C^(t+1) = [[C^(t),                (R^(t))^T dX],
///              [dR^T R^(t) U^(t) C^(t), dR^T dX]]
///
/// (bottom row omitted when no fiber was appended). The per-step draw seed
/// is state.seed XOR state.t, so replaying a stream is reproducible.
/// An all-zero slab is legal and degrades to the top-row-only branch.
StreamState ctd_d_step(StreamState state, const SparseTensor& slab,
                       index_t sample_size);

/// (((dR^T R) U) C, evaluated strictly left to right.
SparseMatrix chain_product(const SparseMatrix& delta_r, const SparseMatrix& r,
                           const DenseMatrix& u, const SparseMatrix& core);

/// |C_(alpha) - R^T X_(alpha)|_F against the retained history; measures the
/// drift introduced by the substitution in the bottom-left block.
double core_drift(const StreamState& state);

}  // namespace ctd
