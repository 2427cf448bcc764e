#include "ctd/ctd_static.hpp"

#include <string>

#include "ctd/error.hpp"
#include "ctd/fiber_basis.hpp"
#include "ctd/sampling.hpp"
#include "ctd/tensor_ops.hpp"

namespace ctd {

SparseTensor compute_core(const SparseTensor& x, const SparseMatrix& r,
                          int mode) {
  if (r.rows() != x.extent(mode))
    throw ShapeError("fiber matrix rows do not match the tensor extent");
  return n_mode_product(x, mode, r, /*transpose=*/true);
}

LRFactors ctd_s(const SparseTensor& x, int mode, index_t sample_size,
                double epsilon, std::uint64_t seed) {
  if (x.nnz() == 0) throw EmptyInputError("cannot decompose an empty tensor");
  if (mode < 0 || mode >= x.order())
    throw ArgumentError("mode " + std::to_string(mode) +
                        " out of range for order " +
                        std::to_string(x.order()));
  if (sample_size < 1) throw ArgumentError("sample size must be at least 1");
  if (!(epsilon > 0.0)) throw ArgumentError("epsilon must be positive");

  const SparseMatrix unfolded = matricize(x, mode);
  const ColumnDistribution dist = column_distribution(unfolded);
  const std::vector<index_t> drawn =
      sample_with_replacement(dist, sample_size, seed);
  const std::vector<index_t> unique = unique_first_occurrence(drawn);

  FiberBasis basis(unfolded.rows());
  LRFactors factors;
  factors.mode = mode;
  factors.epsilon = epsilon;
  factors.seed = seed;
  for (index_t j : unique) {
    const auto result = basis.try_append_fiber(unfolded.column(j), epsilon);
    if (result.accepted)
      factors.kept_fibers.push_back(make_fiber_id(x.shape(), mode, j));
  }

  factors.R = basis.to_matrix();
  factors.U = basis.inverse_gram();
  factors.C = compute_core(x, factors.R, mode);
  return factors;
}

}  // namespace ctd
