#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "ctd/ctd_static.hpp"
#include "ctd/ddos.hpp"
#include "ctd/error.hpp"
#include "ctd/tensor_ops.hpp"
#include "support/oracles.hpp"

using namespace ctd;
namespace oracle = ctd::testing;

namespace {

TrafficTensor empty_traffic(index_t sources, index_t destinations,
                            index_t bins) {
  TrafficTensor t;
  t.tensor = SparseTensor({sources, destinations, bins});
  for (index_t i = 0; i < sources; ++i)
    t.src_labels.push_back("s" + std::to_string(i));
  for (index_t i = 0; i < destinations; ++i)
    t.dst_labels.push_back("d" + std::to_string(i));
  return t;
}

/// Factors shaped for detection tests: kept fibers with chosen (dst, bin)
/// ids and column norms.
LRFactors detection_fixture(const std::vector<index_t>& dsts,
                            const std::vector<index_t>& bins,
                            const std::vector<double>& norms) {
  const index_t sources = 4;
  const index_t destinations = 8;
  const index_t time = 16;
  LRFactors f;
  f.mode = 0;
  std::vector<index_t> ri, ci;
  std::vector<double> rv;
  for (size_t k = 0; k < norms.size(); ++k) {
    ri.push_back(static_cast<index_t>(k) % sources);
    ci.push_back(static_cast<index_t>(k));
    rv.push_back(norms[k]);
    f.kept_fibers.push_back(make_fiber_id(
        {sources, destinations, time}, 0, dsts[k] + destinations * bins[k]));
  }
  f.R = SparseMatrix(sources, static_cast<index_t>(norms.size()), ri, ci, rv);
  f.U = DenseMatrix::identity(static_cast<index_t>(norms.size()));
  std::vector<index_t> core_shape{static_cast<index_t>(norms.size()),
                                  destinations, time};
  f.C = SparseTensor(core_shape);
  return f;
}

}  // namespace

TEST(InjectDdos, CountsMatchOnEmptyBackground) {
  // fraction 0.2 of 10 sources = 2 participants in one column fiber.
  InjectOptions options;
  options.attacks = 1;
  options.fraction = 0.2;
  options.intensity = 3.0;
  options.seed = 5;
  const auto result = inject_ddos(empty_traffic(10, 6, 4), options);
  EXPECT_EQ(result.traffic.tensor.nnz(), 2);
  ASSERT_EQ(result.attacks.size(), 1u);
  const AttackSpec& attack = result.attacks.front();
  EXPECT_EQ(attack.sources.size(), 2u);
  for (index_t i = 0; i < result.traffic.tensor.nnz(); ++i) {
    const auto idx = result.traffic.tensor.index(i);
    EXPECT_EQ(idx[1], attack.victim);
    EXPECT_EQ(idx[2], attack.bin);
    EXPECT_DOUBLE_EQ(result.traffic.tensor.value(i), 3.0);
  }
}

TEST(InjectDdos, InjectedFiberNormOnZeroBackground) {
  InjectOptions options;
  options.attacks = 1;
  options.fraction = 0.5;
  options.intensity = 2.0;
  const auto result = inject_ddos(empty_traffic(8, 5, 3), options);
  const auto norms = column_sq_norms(matricize(result.traffic.tensor, 0));
  double max_sq = 0.0;
  for (double n : norms) max_sq = std::max(max_sq, n);
  // 4 participating sources at intensity 2: squared norm 16.
  EXPECT_DOUBLE_EQ(max_sq, 16.0);
}

TEST(InjectDdos, DefaultIntensityScalesWithBackground) {
  TrafficTensor traffic = empty_traffic(10, 6, 4);
  traffic.tensor = SparseTensor({10, 6, 4},
                                {{{0, 0, 0}, 3.0},
                                 {{1, 1, 1}, 4.0},
                                 {{2, 2, 2}, 5.0}});
  InjectOptions options;
  options.attacks = 1;
  options.fraction = 0.2;
  options.intensity_multiplier = 6.0;
  options.seed = 11;
  const auto result = inject_ddos(std::move(traffic), options);
  // Mean nonzero fiber norm = (3+4+5)/3 = 4; two sources participate, so
  // per-source weight is 6*4/sqrt(2) and the attack fiber norm is >= 24.
  EXPECT_NEAR(result.attacks.front().intensity, 24.0 / std::sqrt(2.0), 1e-12);
  const auto norms = column_sq_norms(matricize(result.traffic.tensor, 0));
  double max_sq = 0.0;
  for (double n : norms) max_sq = std::max(max_sq, n);
  EXPECT_GE(std::sqrt(max_sq), 24.0 - 1e-9);
}

TEST(InjectDdos, VictimsAreDistinct) {
  InjectOptions options;
  options.attacks = 5;
  options.intensity = 1.0;
  const auto result = inject_ddos(empty_traffic(10, 6, 20), options);
  std::vector<index_t> victims;
  for (const auto& a : result.attacks) victims.push_back(a.victim);
  std::sort(victims.begin(), victims.end());
  EXPECT_EQ(std::adjacent_find(victims.begin(), victims.end()), victims.end());
}

TEST(InjectDdos, RejectsBadArguments) {
  InjectOptions zero;
  zero.attacks = 0;
  EXPECT_THROW(inject_ddos(empty_traffic(4, 4, 4), zero), ArgumentError);

  InjectOptions too_many;
  too_many.attacks = 5;
  EXPECT_THROW(inject_ddos(empty_traffic(4, 4, 4), too_many), ArgumentError);

  InjectOptions bad_fraction;
  bad_fraction.fraction = 0.0;
  EXPECT_THROW(inject_ddos(empty_traffic(4, 4, 4), bad_fraction),
               ArgumentError);
}

TEST(DetectDdos, EqualNormsYieldNoCandidates) {
  const LRFactors f =
      detection_fixture({1, 2, 3}, {0, 1, 2}, {2.0, 2.0, 2.0});
  EXPECT_TRUE(detect_ddos(f).empty());
}

TEST(DetectDdos, FlagsTheDominantRepresentative) {
  const LRFactors f =
      detection_fixture({5, 2, 7}, {3, 1, 9}, {5.0, 1.0, 1.0});
  const auto candidates = detect_ddos(f);
  ASSERT_EQ(candidates.size(), 1u);
  EXPECT_EQ(candidates.front().dst, 5);
  EXPECT_EQ(candidates.front().bin, 3);
  EXPECT_DOUBLE_EQ(candidates.front().norm, 5.0);
}

TEST(DetectDdos, EarliestFiberRepresentsItsDestination) {
  // Same destination twice: the earlier, weaker fiber is the
  // representative, so the later strong one cannot be flagged.
  const LRFactors f =
      detection_fixture({4, 4, 1}, {0, 6, 2}, {1.0, 9.0, 1.2});
  const auto candidates = detect_ddos(f);
  for (const auto& c : candidates) EXPECT_NE(c.bin, 6);
}

TEST(DetectDdos, EmptyFactorsGiveEmptyReport) {
  LRFactors f;
  f.mode = 0;
  f.R = SparseMatrix(4, 0);
  f.U = DenseMatrix(0, 0);
  f.C = SparseTensor({0, 8, 16});
  EXPECT_TRUE(detect_ddos(f).empty());
  const DetectionReport report = score_detection({}, {});
  EXPECT_EQ(report.recall, 0.0);
  EXPECT_EQ(report.precision, 0.0);
  EXPECT_EQ(report.f1, 0.0);
}

TEST(DetectDdos, RejectsTimeModeFactors) {
  LRFactors f;
  f.mode = 2;
  f.R = SparseMatrix(16, 0);
  f.U = DenseMatrix(0, 0);
  f.C = SparseTensor({4, 8, 0});
  EXPECT_THROW(detect_ddos(f), ArgumentError);
}

TEST(ScoreDetection, MetricsAndTimeAgreement) {
  std::vector<AttackSpec> attacks(2);
  attacks[0].victim = 3;
  attacks[0].bin = 5;
  attacks[1].victim = 6;
  attacks[1].bin = 9;
  // One true positive with matching bin, one false positive.
  std::vector<Candidate> candidates{{3, 5, 10.0}, {1, 2, 8.0}};
  const DetectionReport report = score_detection(candidates, attacks);
  EXPECT_DOUBLE_EQ(report.recall, 0.5);
  EXPECT_DOUBLE_EQ(report.precision, 0.5);
  EXPECT_DOUBLE_EQ(report.f1, 0.5);
  EXPECT_EQ(report.time_matches, 1);
}

TEST(ScoreDetection, OrderOfAttacksDoesNotMatter) {
  std::vector<AttackSpec> attacks(3);
  for (int i = 0; i < 3; ++i) {
    attacks[static_cast<size_t>(i)].victim = i;
    attacks[static_cast<size_t>(i)].bin = i;
  }
  std::vector<Candidate> candidates{{2, 2, 4.0}, {0, 9, 3.0}};
  const DetectionReport forward = score_detection(candidates, attacks);
  std::reverse(attacks.begin(), attacks.end());
  const DetectionReport backward = score_detection(candidates, attacks);
  EXPECT_DOUBLE_EQ(forward.recall, backward.recall);
  EXPECT_DOUBLE_EQ(forward.precision, backward.precision);
  EXPECT_DOUBLE_EQ(forward.f1, backward.f1);
  EXPECT_EQ(forward.time_matches, backward.time_matches);
}

TEST(OnlineDetection, SingleDominantAttackIsFoundPerfectly) {
  // One injected attack towering over a patterned background; the paper's
  // operating point d = 10, epsilon = 0.15.
  SyntheticConfig config = caida_like();
  config.bins = 200;
  config.target_nnz = 4000;
  config.seed = 404;
  InjectOptions options;
  options.attacks = 1;
  options.seed = 405;
  const auto injected = inject_ddos(generate_traffic(config), options);

  const LRFactors factors =
      decompose_online(injected.traffic.tensor, 0, 10, 0.15, 406);
  const DetectionReport report =
      score_detection(detect_ddos(factors), injected.attacks);
  EXPECT_DOUBLE_EQ(report.recall, 1.0);
  EXPECT_DOUBLE_EQ(report.precision, 1.0);
  EXPECT_DOUBLE_EQ(report.f1, 1.0);
}
