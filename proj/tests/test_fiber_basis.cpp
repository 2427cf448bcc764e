#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "ctd/error.hpp"
#include "ctd/fiber_basis.hpp"
#include "support/oracles.hpp"

using namespace ctd;
namespace oracle = ctd::testing;

namespace {

SparseVec dense_to_vec(const Eigen::VectorXd& v) {
  SparseVec out;
  out.dim = v.size();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) != 0.0) {
      out.idx.push_back(i);
      out.val.push_back(v(i));
    }
  }
  return out;
}

}  // namespace

TEST(FiberBasis, FirstNonzeroFiberInitializesU) {
  FiberBasis basis(4);
  SparseVec x{4, {1, 3}, {3.0, 4.0}};
  const auto result = basis.try_append_fiber(x, 1e-6);
  ASSERT_TRUE(result.accepted);
  EXPECT_DOUBLE_EQ(result.delta, 25.0);
  ASSERT_EQ(basis.size(), 1);
  EXPECT_DOUBLE_EQ(basis.inverse_gram().at(0, 0), 1.0 / 25.0);
}

TEST(FiberBasis, DuplicateColumnIsRejected) {
  FiberBasis basis(4);
  SparseVec x{4, {0, 2}, {1.0, -2.0}};
  ASSERT_TRUE(basis.try_append_fiber(x, 1e-6).accepted);
  const auto result = basis.try_append_fiber(x, 1e-6);
  EXPECT_FALSE(result.accepted);
  EXPECT_FALSE(result.degenerate);
  EXPECT_EQ(basis.size(), 1);
}

TEST(FiberBasis, ZeroFiberIsRejected) {
  FiberBasis basis(4);
  ASSERT_TRUE(
      basis.try_append_fiber(SparseVec{4, {0}, {1.0}}, 1e-6).accepted);
  EXPECT_FALSE(basis.try_append_fiber(SparseVec{4, {}, {}}, 1e-6).accepted);
}

TEST(FiberBasis, OrthogonalFiberAcceptedWithFullDelta) {
  FiberBasis basis(6);
  ASSERT_TRUE(
      basis.try_append_fiber(SparseVec{6, {0, 1}, {1.0, 2.0}}, 1e-6).accepted);
  // Disjoint support is orthogonal: residual equals the fiber itself.
  SparseVec x{6, {3, 5}, {2.0, 1.0}};
  const auto result = basis.try_append_fiber(x, 1e-6);
  ASSERT_TRUE(result.accepted);
  EXPECT_DOUBLE_EQ(result.delta, 5.0);
  ASSERT_EQ(result.y.size(), 1u);
  EXPECT_DOUBLE_EQ(result.y[0], 0.0);
}

TEST(FiberBasis, UpdatedUMatchesDenseInverseOracle) {
  // Random independent 10x3 basis, then a random fourth column: after the
  // append U must equal inv(R^T R) computed densely.
  std::mt19937_64 rng(5);
  Eigen::MatrixXd r(10, 4);
  for (Eigen::Index i = 0; i < r.size(); ++i)
    r(i) = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
  FiberBasis basis(10);
  for (int j = 0; j < 4; ++j) {
    const auto result =
        basis.try_append_fiber(dense_to_vec(r.col(j)), 1e-6);
    ASSERT_TRUE(result.accepted);
  }
  const Eigen::MatrixXd gram = r.transpose() * r;
  const Eigen::MatrixXd inv = gram.inverse();
  const Eigen::MatrixXd got = oracle::to_eigen(basis.inverse_gram());
  EXPECT_LE((got - inv).cwiseAbs().maxCoeff() / inv.cwiseAbs().maxCoeff(),
            1e-8);
}

TEST(FiberBasis, InverseGramInvariantHoldsThroughRandomAppends) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    FiberBasis basis(12);
    for (int k = 0; k < 20; ++k) {
      const SparseVec x = oracle::random_sparse_vec(12, 0.4, seed * 100 + k);
      basis.try_append_fiber(x, 1e-6);
      if (basis.size() > 0)
        EXPECT_LE(oracle::inverse_gram_defect(basis.to_matrix(),
                                              basis.inverse_gram()),
                  1e-8);
    }
  }
}

TEST(FiberBasis, USymmetricAfterEveryAccept) {
  FiberBasis basis(10);
  for (int k = 0; k < 15; ++k) {
    basis.try_append_fiber(oracle::random_sparse_vec(10, 0.5, 77 + k), 1e-6);
    const DenseMatrix& u = basis.inverse_gram();
    for (index_t i = 0; i < u.rows(); ++i)
      for (index_t j = 0; j < u.cols(); ++j)
        EXPECT_NEAR(u.at(i, j), u.at(j, i), 1e-10);
  }
}

TEST(FiberBasis, UnderflowingResidualFlagsDegeneracy) {
  // A fiber whose squared residual lands in the denormal range passes the
  // relative test, but 1/delta overflows; the update must refuse it.
  FiberBasis basis(4);
  ASSERT_TRUE(
      basis.try_append_fiber(SparseVec{4, {0}, {1.0}}, 1e-6).accepted);
  const auto result =
      basis.try_append_fiber(SparseVec{4, {2}, {1e-160}}, 1e-6);
  EXPECT_FALSE(result.accepted);
  EXPECT_TRUE(result.degenerate);
  EXPECT_EQ(basis.size(), 1);
}

TEST(FiberBasis, RejectsMismatchedDimension) {
  FiberBasis basis(4);
  EXPECT_THROW(basis.try_append_fiber(SparseVec{5, {0}, {1.0}}, 1e-6),
               ShapeError);
}

TEST(FiberBasis, ResumeFromExistingFactorsContinuesTheInvariant) {
  FiberBasis first(8);
  for (int k = 0; k < 6; ++k)
    first.try_append_fiber(oracle::random_sparse_vec(8, 0.5, 900 + k), 1e-6);
  FiberBasis resumed(first.to_matrix(), first.inverse_gram());
  EXPECT_EQ(resumed.size(), first.size());
  resumed.try_append_fiber(oracle::random_sparse_vec(8, 0.6, 999), 1e-6);
  EXPECT_LE(oracle::inverse_gram_defect(resumed.to_matrix(),
                                        resumed.inverse_gram()),
            1e-8);
}
