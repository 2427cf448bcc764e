#pragma once

#include <cstdint>

#include "ctd/factors.hpp"
#include "ctd/sparse_tensor.hpp"

namespace ctd {

/// Default residual tolerance for the static decomposition.
inline constexpr double kDefaultEpsilon = 1e-6;
inline constexpr std::uint64_t kDefaultSeed = 42;

/// Static decomposition: samples `sample_size` mode-`mode` fibers with
/// probability proportional to squared norm, keeps the linearly independent
/// ones as columns of R (first-occurrence order), and computes the core
/// C = X x_mode R^T.
///
/// The draw sequence is reproducible: it equals
/// sample_with_replacement(column_distribution(matricize(x, mode)),
/// sample_size, seed).
LRFactors ctd_s(const SparseTensor& x, int mode, index_t sample_size,
                double epsilon = kDefaultEpsilon,
                std::uint64_t seed = kDefaultSeed);

/// C = X x_mode R^T; the mode-`mode` matricization of the result equals
/// R^T X_(mode).
SparseTensor compute_core(const SparseTensor& x, const SparseMatrix& r, int mode);

}  // namespace ctd
