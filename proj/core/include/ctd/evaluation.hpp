#pragma once

#include <string>

#include "ctd/factors.hpp"
#include "ctd/sparse_matrix.hpp"
#include "ctd/sparse_tensor.hpp"

namespace ctd {

/// Per-run (or per-step) evaluation record. Serialized as one
/// tab-separated line: step, error, seconds, memory usage, kept fibers.
struct EvalReport {
  double relative_error = 0.0;
  double memory_usage = 0.0;
  double wall_time_seconds = 0.0;
  index_t kept_fibers = 0;
};

std::string tsv_header();
std::string tsv_line(index_t step, const EvalReport& report);

inline constexpr index_t kDefaultOracleCellBudget = 1'000'000;

/// Projection error |X_(mode) - R0 R0^+ X_(mode)|_F computed by a dense
/// rank-revealing least-squares solve on the densified matrices; singular
/// values below 1e-10 times the largest are treated as zero (R0 may contain
/// duplicate columns). Ground truth for the optimality tests; the value is
/// invariant under duplication or permutation of R0's columns.
///
/// Note this is an unsquared norm, while relative_error below is a ratio of
/// squared norms; tests must compare like with like.
double oracle_projection_error(const SparseTensor& x, int mode,
                               const SparseMatrix& r0,
                               index_t cell_budget = kDefaultOracleCellBudget);

/// |X~ - X|_F^2 / |X|_F^2 with X~ = C x_mode (R U), evaluated column by
/// column without materializing X~. Zero iff the reconstruction is exact.
double relative_error(const SparseTensor& x, const LRFactors& f);

/// (nnz(C) + nnz(U) + nnz(R)) / nnz(X), exact on coalesced counts.
double memory_usage(const SparseTensor& x, const LRFactors& f);

/// X~ = C x_mode (R U) materialized as a sparse tensor.
SparseTensor reconstruct(const LRFactors& f);

}  // namespace ctd
