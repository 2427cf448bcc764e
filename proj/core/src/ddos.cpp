#include "ctd/ddos.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

#include "ctd/ctd_dynamic.hpp"
#include "ctd/error.hpp"
#include "ctd/stream_harness.hpp"
#include "ctd/tensor_ops.hpp"

namespace ctd {

double mean_fiber_norm(const SparseTensor& x, int mode) {
  const auto norms = column_sq_norms(matricize(x, mode));
  double sum = 0.0;
  index_t count = 0;
  for (double n : norms) {
    if (n > 0.0) {
      sum += std::sqrt(n);
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

InjectionResult inject_ddos(TrafficTensor traffic,
                            const InjectOptions& options) {
  const SparseTensor& x = traffic.tensor;
  if (x.order() != 3)
    throw ArgumentError("attack injection expects a src x dst x time tensor");
  if (options.attacks < 1)
    throw ArgumentError("attack count must be at least 1");
  if (!(options.fraction > 0.0) || options.fraction > 1.0)
    throw ArgumentError("participating fraction must lie in (0, 1]");
  const index_t sources = x.extent(0);
  const index_t destinations = x.extent(1);
  const index_t bins = x.extent(2);
  if (options.attacks > destinations)
    throw ArgumentError("more attacks than distinct destinations");
  if (options.intensity && !(*options.intensity > 0.0))
    throw ArgumentError("attack intensity must be positive");

  const index_t participants = static_cast<index_t>(
      std::ceil(options.fraction * static_cast<double>(sources)));

  double intensity;
  if (options.intensity) {
    intensity = *options.intensity;
  } else {
    // Per-source weight giving the attack fiber a norm of
    // intensity_multiplier times the mean nonzero background fiber norm
    // (a zero background gets unit scale).
    const double mean_norm = mean_fiber_norm(x, 0);
    const double base = mean_norm > 0.0 ? mean_norm : 1.0;
    intensity = options.intensity_multiplier * base /
                std::sqrt(static_cast<double>(participants));
  }

  std::mt19937_64 rng(options.seed);
  std::vector<index_t> victims(static_cast<size_t>(destinations));
  std::iota(victims.begin(), victims.end(), index_t{0});
  for (size_t i = victims.size(); i > 1; --i)
    std::swap(victims[i - 1], victims[static_cast<size_t>(rng() % i)]);
  victims.resize(static_cast<size_t>(options.attacks));

  std::vector<index_t> indices = x.indices();
  std::vector<double> values = x.values();
  std::vector<AttackSpec> attacks;
  attacks.reserve(static_cast<size_t>(options.attacks));
  for (index_t victim : victims) {
    AttackSpec attack;
    attack.victim = victim;
    attack.bin = static_cast<index_t>(rng() % static_cast<std::uint64_t>(bins));
    attack.intensity = intensity;
    std::vector<index_t> hosts(static_cast<size_t>(sources));
    std::iota(hosts.begin(), hosts.end(), index_t{0});
    for (size_t i = hosts.size(); i > 1; --i)
      std::swap(hosts[i - 1], hosts[static_cast<size_t>(rng() % i)]);
    hosts.resize(static_cast<size_t>(participants));
    std::sort(hosts.begin(), hosts.end());
    for (index_t s : hosts) {
      indices.push_back(s);
      indices.push_back(victim);
      indices.push_back(attack.bin);
      values.push_back(intensity);
    }
    attack.sources = std::move(hosts);
    attacks.push_back(std::move(attack));
  }

  traffic.tensor =
      SparseTensor(x.shape(), std::move(indices), std::move(values));
  return InjectionResult{std::move(traffic), std::move(attacks)};
}

std::vector<Candidate> detect_ddos(const LRFactors& factors) {
  const int order = factors.C.order();
  if (order < 2) throw ArgumentError("factors carry no decodable fibers");
  if (factors.mode == order - 1)
    throw ArgumentError("detection needs a non-time decomposition mode");

  std::vector<Candidate> representatives;
  std::unordered_set<index_t> seen;
  for (size_t k = 0; k < factors.kept_fibers.size(); ++k) {
    const FiberId& id = factors.kept_fibers[k];
    // coords = non-mode indices in increasing mode order; for a
    // (src, dst, time) tensor decomposed on the source mode this is
    // (destination, time bin).
    const index_t dst = id.coords.front();
    const index_t bin = id.coords.back();
    if (!seen.insert(dst).second) continue;  // keep earliest-accepted fiber
    double norm_sq = 0.0;
    for (double v : factors.R.column_values(static_cast<index_t>(k)))
      norm_sq += v * v;
    representatives.push_back({dst, bin, std::sqrt(norm_sq)});
  }
  if (representatives.empty()) return {};

  double mean = 0.0;
  for (const Candidate& r : representatives) mean += r.norm;
  mean /= static_cast<double>(representatives.size());

  std::vector<Candidate> flagged;
  for (const Candidate& r : representatives)
    if (r.norm > mean) flagged.push_back(r);
  return flagged;
}

DetectionReport score_detection(std::vector<Candidate> candidates,
                                std::span<const AttackSpec> attacks) {
  DetectionReport report;
  report.candidates = std::move(candidates);
  if (report.candidates.empty() && attacks.empty()) return report;

  index_t true_positives = 0;
  for (const Candidate& c : report.candidates) {
    const auto hit = std::find_if(
        attacks.begin(), attacks.end(),
        [&](const AttackSpec& a) { return a.victim == c.dst; });
    if (hit != attacks.end()) {
      ++true_positives;
      if (hit->bin == c.bin) ++report.time_matches;
    }
  }
  index_t recalled = 0;
  for (const AttackSpec& a : attacks) {
    const bool found = std::any_of(
        report.candidates.begin(), report.candidates.end(),
        [&](const Candidate& c) { return c.dst == a.victim; });
    if (found) ++recalled;
  }

  report.precision =
      report.candidates.empty()
          ? 0.0
          : static_cast<double>(true_positives) /
                static_cast<double>(report.candidates.size());
  report.recall = attacks.empty() ? 0.0
                                  : static_cast<double>(recalled) /
                                        static_cast<double>(attacks.size());
  const double pr = report.precision + report.recall;
  report.f1 = pr == 0.0 ? 0.0 : 2.0 * report.precision * report.recall / pr;
  return report;
}

LRFactors decompose_online(const SparseTensor& traffic, int mode, index_t d,
                           double epsilon, std::uint64_t seed) {
  if (traffic.order() < 2)
    throw ArgumentError("online decomposition needs a time mode");
  if (traffic.nnz() == 0)
    throw EmptyInputError("cannot decompose an empty traffic tensor");
  const index_t horizon = traffic.shape().back();

  // Bootstrap on the shortest prefix that contains traffic; leading empty
  // slabs cannot seed a static decomposition.
  index_t first = 0;
  while (time_slab(traffic, first, first + 1).nnz() == 0) ++first;
  StreamState state =
      init_stream(time_slab(traffic, 0, first + 1), mode, d, epsilon, seed);
  for (index_t t = first + 1; t < horizon; ++t)
    state = ctd_d_step(std::move(state), time_slab(traffic, t, t + 1), d);
  return state.factors();
}

}  // namespace ctd
