#include "ctd/sampling.hpp"

#include <algorithm>
#include <random>

#include "ctd/error.hpp"
#include "ctd/tensor_ops.hpp"

namespace ctd {

namespace {

/// Uniform double in [0, 1) from the top 53 bits of the generator output;
/// independent of the standard library's distribution implementation.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

ColumnDistribution column_distribution(const SparseMatrix& m) {
  if (m.nnz() == 0)
    throw EmptyInputError("column distribution of an all-zero matrix");
  ColumnDistribution dist;
  dist.probabilities = column_sq_norms(m);
  double total = 0.0;
  for (double p : dist.probabilities) total += p;
  dist.total_sq_norm = total;
  for (double& p : dist.probabilities) p /= total;
  return dist;
}

std::vector<index_t> sample_with_replacement(const ColumnDistribution& dist,
                                             index_t count,
                                             std::uint64_t seed) {
  if (count < 0) throw ArgumentError("sample count must be non-negative");
  std::vector<index_t> drawn;
  if (count == 0) return drawn;
  drawn.reserve(static_cast<size_t>(count));

  const auto& p = dist.probabilities;
  std::vector<double> cumulative(p.size());
  double acc = 0.0;
  size_t last_positive = p.size();
  for (size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    cumulative[i] = acc;
    if (p[i] > 0.0) last_positive = i;
  }
  if (last_positive == p.size())
    throw EmptyInputError("sampling from an all-zero distribution");
  // Clamp away normalization residue so the last reachable column is
  // selectable for every u in [0, 1).
  for (size_t i = last_positive; i < p.size(); ++i) cumulative[i] = 1.0;

  std::mt19937_64 rng(seed);
  for (index_t k = 0; k < count; ++k) {
    const double u = uniform01(rng);
    const auto it =
        std::upper_bound(cumulative.begin(), cumulative.end(), u);
    drawn.push_back(static_cast<index_t>(it - cumulative.begin()));
  }
  return drawn;
}

std::vector<index_t> unique_first_occurrence(std::span<const index_t> drawn) {
  std::vector<index_t> unique;
  std::vector<index_t> seen;  // sorted membership set
  unique.reserve(drawn.size());
  seen.reserve(drawn.size());
  for (index_t i : drawn) {
    const auto it = std::lower_bound(seen.begin(), seen.end(), i);
    if (it != seen.end() && *it == i) continue;
    seen.insert(it, i);
    unique.push_back(i);
  }
  return unique;
}

}  // namespace ctd
