#include <gtest/gtest.h>

#include <cmath>

#include "ctd/ctd_static.hpp"
#include "ctd/error.hpp"
#include "ctd/evaluation.hpp"
#include "ctd/tensor_ops.hpp"
#include "support/oracles.hpp"

using namespace ctd;
namespace oracle = ctd::testing;

TEST(OracleProjectionError, CompleteBasisGivesZero) {
  const SparseTensor x = oracle::random_sparse_tensor({6, 5, 4}, 0.4, 3);
  // All columns of the matricization span the full column space.
  const SparseMatrix r0 = matricize(x, 0);
  EXPECT_LE(oracle_projection_error(x, 0, r0), 1e-10);
}

TEST(OracleProjectionError, PythagorasOnOrthogonalFiber) {
  // One kept fiber orthogonal to everything else: the residual satisfies
  // err^2 = |X|^2 - |fiber|^2.
  SparseTensor x({4, 3, 1},
                 {{{0, 0, 0}, 3.0},
                  {{1, 0, 0}, 4.0},
                  {{2, 1, 0}, 2.0},
                  {{3, 2, 0}, -1.0}});
  const SparseMatrix r0(4, 1, {0, 1}, {0, 0}, {3.0, 4.0});
  const double err = oracle_projection_error(x, 0, r0);
  const double total_sq = std::pow(frobenius_norm(x), 2);
  EXPECT_NEAR(err * err, total_sq - 25.0, 1e-10);
}

TEST(OracleProjectionError, InvariantUnderDuplicationAndPermutation) {
  const SparseTensor x = oracle::random_sparse_tensor({8, 6, 5}, 0.1, 17);
  const SparseMatrix r = oracle::random_sparse_matrix(8, 3, 0.5, 19);

  // Duplicate every column twice and shuffle the order.
  std::vector<index_t> ri, ci;
  std::vector<double> vals;
  const index_t copies[] = {2, 0, 1, 1, 2, 0};
  for (index_t k = 0; k < 6; ++k) {
    const auto cr = r.column_rows(copies[k]);
    const auto cv = r.column_values(copies[k]);
    for (size_t t = 0; t < cr.size(); ++t) {
      ri.push_back(cr[t]);
      ci.push_back(k);
      vals.push_back(cv[t]);
    }
  }
  const SparseMatrix duplicated(8, 6, ri, ci, vals);

  const double a = oracle_projection_error(x, 0, r);
  const double b = oracle_projection_error(x, 0, duplicated);
  EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, a));
}

TEST(OracleProjectionError, EnforcesCellBudget) {
  const SparseTensor x = oracle::random_sparse_tensor({20, 30, 40}, 0.01, 23);
  const SparseMatrix r0 = oracle::random_sparse_matrix(20, 2, 0.4, 29);
  EXPECT_THROW(oracle_projection_error(x, 0, r0, 1000), OracleError);
  EXPECT_NO_THROW(oracle_projection_error(x, 0, r0));
}

TEST(OracleProjectionError, RejectsEmptyBasis) {
  const SparseTensor x = oracle::random_sparse_tensor({4, 4, 4}, 0.3, 31);
  EXPECT_THROW(oracle_projection_error(x, 0, SparseMatrix(4, 0)),
               EmptyInputError);
}

TEST(RelativeError, ExactFactorsGiveZero) {
  const SparseTensor x = oracle::exact_low_rank_tensor({9, 6, 5}, 0, 3, 0.9, 37);
  const LRFactors f = ctd_s(x, 0, 150, 1e-6, 41);
  EXPECT_LE(relative_error(x, f), 1e-12);
}

TEST(RelativeError, EmptyFactorsGiveOne) {
  const SparseTensor x = oracle::random_sparse_tensor({5, 4, 3}, 0.3, 43);
  LRFactors f;
  f.mode = 0;
  f.R = SparseMatrix(5, 0);
  f.U = DenseMatrix(0, 0);
  std::vector<index_t> core_shape = x.shape();
  core_shape[0] = 0;
  f.C = SparseTensor(core_shape);
  EXPECT_DOUBLE_EQ(relative_error(x, f), 1.0);
}

TEST(RelativeError, MatchesDenseReconstructionOracle) {
  const SparseTensor x = oracle::random_sparse_tensor({10, 8, 6}, 0.08, 47);
  const LRFactors f = ctd_s(x, 0, 25, 1e-6, 53);

  // Dense witness: reconstruct through the full dense mode product.
  DenseMatrix ru(f.R.rows(), f.U.cols());
  for (index_t k = 0; k < f.R.cols(); ++k) {
    const auto cr = f.R.column_rows(k);
    const auto cv = f.R.column_values(k);
    for (size_t t = 0; t < cr.size(); ++t)
      for (index_t c = 0; c < f.U.cols(); ++c)
        ru.at(cr[t], c) += cv[t] * f.U.at(k, c);
  }
  const oracle::DenseTensor recon =
      oracle::dense_n_mode_product(oracle::to_dense(f.C), 0, ru, false);
  const oracle::DenseTensor dense_x = oracle::to_dense(x);
  double err_sq = 0.0, x_sq = 0.0;
  for (size_t i = 0; i < dense_x.values.size(); ++i) {
    const double d = recon.values[i] - dense_x.values[i];
    err_sq += d * d;
    x_sq += dense_x.values[i] * dense_x.values[i];
  }
  EXPECT_NEAR(relative_error(x, f), err_sq / x_sq,
              1e-10 * std::max(1.0, err_sq / x_sq));

  // The materialized reconstruction agrees with the dense witness too.
  EXPECT_LE(oracle::max_abs_diff(oracle::to_dense(reconstruct(f)), recon),
            1e-10);
}

TEST(RelativeError, RejectsZeroTensor) {
  const SparseTensor x({3, 3, 3});
  LRFactors f;
  f.mode = 0;
  f.R = SparseMatrix(3, 0);
  f.U = DenseMatrix(0, 0);
  std::vector<index_t> core_shape = x.shape();
  core_shape[0] = 0;
  f.C = SparseTensor(core_shape);
  EXPECT_THROW(relative_error(x, f), MetricError);
}

TEST(RelativeError, RejectsShapeMismatch) {
  const SparseTensor x = oracle::random_sparse_tensor({5, 4, 3}, 0.3, 59);
  const LRFactors f = ctd_s(x, 0, 10, 1e-6, 61);
  const SparseTensor other = oracle::random_sparse_tensor({5, 4, 4}, 0.3, 67);
  EXPECT_THROW(relative_error(other, f), ShapeError);
}

TEST(MemoryUsage, MatchedCountsGiveOne) {
  const SparseTensor x = oracle::random_sparse_tensor({6, 6, 6}, 0.2, 71);
  const LRFactors f = ctd_s(x, 0, 30, 1e-6, 73);
  const index_t total = f.C.nnz() + f.U.nnz() + f.R.nnz();
  EXPECT_DOUBLE_EQ(memory_usage(x, f),
                   static_cast<double>(total) / static_cast<double>(x.nnz()));
}

TEST(MemoryUsage, EmptyFactorsGiveZero) {
  const SparseTensor x = oracle::random_sparse_tensor({5, 4, 3}, 0.3, 79);
  LRFactors f;
  f.mode = 0;
  f.R = SparseMatrix(5, 0);
  f.U = DenseMatrix(0, 0);
  std::vector<index_t> core_shape = x.shape();
  core_shape[0] = 0;
  f.C = SparseTensor(core_shape);
  EXPECT_DOUBLE_EQ(memory_usage(x, f), 0.0);
}

TEST(MemoryUsage, ExactArithmeticOnConstructedCounts) {
  // nnz(X)=200, nnz(C)=90, nnz(U)=9, nnz(R)=21: usage = 120/200 = 0.6.
  std::vector<index_t> xi;
  std::vector<double> xv;
  for (index_t i = 0; i < 200; ++i) {
    xi.insert(xi.end(), {i % 20, (i / 20) % 10, i % 7});
    xv.push_back(1.0 + static_cast<double>(i % 5));
  }
  const SparseTensor x({20, 10, 7}, xi, xv);
  ASSERT_EQ(x.nnz(), 200);

  LRFactors f;
  f.mode = 0;
  std::vector<index_t> ri, ci;
  std::vector<double> rv;
  for (index_t k = 0; k < 21; ++k) {
    ri.push_back(k % 20);
    ci.push_back(k % 3);
    rv.push_back(2.0);
  }
  f.R = SparseMatrix(20, 3, ri, ci, rv);
  ASSERT_EQ(f.R.nnz(), 21);
  f.U = DenseMatrix(3, 3, 1.0);
  ASSERT_EQ(f.U.nnz(), 9);
  std::vector<index_t> cidx;
  std::vector<double> cv;
  for (index_t i = 0; i < 90; ++i) {
    cidx.insert(cidx.end(), {i % 3, (i / 3) % 10, (i / 30) % 7});
    cv.push_back(3.0);
  }
  std::vector<index_t> core_shape = x.shape();
  core_shape[0] = 3;
  f.C = SparseTensor(core_shape, cidx, cv);
  ASSERT_EQ(f.C.nnz(), 90);

  EXPECT_DOUBLE_EQ(memory_usage(x, f), 0.6);
}

TEST(MemoryUsage, RejectsEmptyTensor) {
  LRFactors f;
  EXPECT_THROW(memory_usage(SparseTensor({2, 2}), f), MetricError);
}

TEST(EvalReport, TsvLineFormat) {
  EvalReport report{0.25, 0.5, 0.125, 7};
  EXPECT_EQ(tsv_line(3, report), "3\t0.25\t0.125\t0.5\t7");
  EXPECT_EQ(tsv_header(), "step\terror\tseconds\tmemory_usage\tkept_fibers");
}
