#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ctd/sparse_matrix.hpp"

namespace ctd {

/// Probability law over the columns of a matrix, proportional to squared
/// column norms. Columns with zero norm carry probability exactly 0.
struct ColumnDistribution {
  std::vector<double> probabilities;
  double total_sq_norm = 0.0;
};

/// P(i) = |column i|^2 / |M|_F^2. Throws EmptyInputError when M has no
/// nonzero entry.
ColumnDistribution column_distribution(const SparseMatrix& m);

/// Draws `count` independent column indices with law `dist`. Identical
/// (dist, count, seed) inputs yield identical output; zero-probability
/// columns never appear. Sampling is inverse-CDF over a seeded generator,
/// with the cumulative tail clamped to 1 so the last reachable column is
/// always selectable.
std::vector<index_t> sample_with_replacement(const ColumnDistribution& dist,
                                             index_t count, std::uint64_t seed);

/// Distinct indices of `drawn`, ordered by first occurrence. Idempotent.
std::vector<index_t> unique_first_occurrence(std::span<const index_t> drawn);

}  // namespace ctd
