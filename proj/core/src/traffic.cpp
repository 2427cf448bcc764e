#include "ctd/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "ctd/error.hpp"

namespace ctd {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Box-Muller normal deviate; self-contained so streams are reproducible
/// independent of the standard library's distribution internals.
double normal(std::mt19937_64& rng, double mean, double stddev) {
  double u1 = uniform01(rng);
  while (u1 == 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  const double z = std::sqrt(-2.0 * std::log(u1)) *
                   std::cos(2.0 * 3.14159265358979323846 * u2);
  return mean + stddev * z;
}

/// Cumulative weights w_r = 1 / (r+1)^exponent over a shuffled identity
/// assignment, for inverse-CDF draws.
struct SkewedLaw {
  std::vector<index_t> assignment;  // rank -> id
  std::vector<double> cumulative;

  SkewedLaw(index_t n, double exponent, std::mt19937_64& rng) {
    assignment.resize(static_cast<size_t>(n));
    std::iota(assignment.begin(), assignment.end(), index_t{0});
    for (size_t i = assignment.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(rng() % i);
      std::swap(assignment[i - 1], assignment[j]);
    }
    cumulative.resize(static_cast<size_t>(n));
    double acc = 0.0;
    for (size_t r = 0; r < cumulative.size(); ++r) {
      acc += 1.0 / std::pow(static_cast<double>(r + 1), exponent);
      cumulative[r] = acc;
    }
  }

  index_t draw(std::mt19937_64& rng) const {
    const double u = uniform01(rng) * cumulative.back();
    const auto it =
        std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const size_t rank = std::min(
        static_cast<size_t>(it - cumulative.begin()), cumulative.size() - 1);
    return assignment[rank];
  }
};

struct PatternEntry {
  index_t src;
  double value;
};

}  // namespace

TrafficTensor build_tensor(const EdgeList& edges,
                           std::int64_t bin_width_seconds) {
  if (bin_width_seconds <= 0)
    throw ArgumentError("bin width must be positive");
  if (!edges.fully_timed())
    throw ArgumentError("temporal tensor requires a timestamp on every record");

  std::int64_t t_min = *edges.records.front().time;
  for (const EdgeRecord& r : edges.records) t_min = std::min(t_min, *r.time);

  index_t bins = 0;
  std::vector<index_t> indices;
  std::vector<double> values;
  indices.reserve(edges.records.size() * 3);
  values.reserve(edges.records.size());
  for (const EdgeRecord& r : edges.records) {
    const index_t bin =
        static_cast<index_t>((*r.time - t_min) / bin_width_seconds);
    bins = std::max(bins, bin + 1);
    indices.push_back(r.src);
    indices.push_back(r.dst);
    indices.push_back(bin);
    values.push_back(r.weight);
  }

  TrafficTensor traffic;
  traffic.bin_width = bin_width_seconds;
  traffic.t_min = t_min;
  traffic.src_labels = edges.src_labels;
  traffic.dst_labels = edges.dst_labels;
  traffic.tensor = SparseTensor(
      {static_cast<index_t>(edges.src_labels.size()),
       static_cast<index_t>(edges.dst_labels.size()), bins},
      std::move(indices), std::move(values));
  return traffic;
}

SyntheticConfig caida_like() { return SyntheticConfig{}; }

SyntheticConfig haggle_like() {
  SyntheticConfig config;
  config.sources = 77;
  config.destinations = 274;
  config.bins = 1567;
  config.target_nnz = 27972;
  config.patterns = 24;
  config.noise_fraction = 0.35;
  return config;
}

TrafficTensor generate_traffic(const SyntheticConfig& config) {
  if (config.sources < 1 || config.destinations < 1 || config.bins < 1)
    throw ArgumentError("traffic tensor extents must be positive");
  if (config.target_nnz < 1)
    throw ArgumentError("target nonzero count must be positive");
  if (config.patterns < 1)
    throw ArgumentError("at least one traffic pattern is required");
  const index_t cells =
      config.sources * config.destinations * config.bins;
  if (config.target_nnz > cells)
    throw ArgumentError("target nonzero count exceeds the tensor size");

  std::mt19937_64 rng(config.seed);
  const SkewedLaw src_law(config.sources, 0.9, rng);
  const SkewedLaw dst_law(config.destinations, config.zipf_exponent, rng);

  // Recurring source patterns: unit-norm sparse vectors over the sources.
  std::vector<std::vector<PatternEntry>> patterns;
  patterns.reserve(static_cast<size_t>(config.patterns));
  for (int p = 0; p < config.patterns; ++p) {
    const double u = uniform01(rng);
    const index_t want =
        std::min<index_t>(config.sources,
                          3 + static_cast<index_t>(std::floor(
                                  std::log(1.0 - u) / std::log(0.65))));
    std::vector<PatternEntry> pattern;
    std::vector<index_t> used;
    while (static_cast<index_t>(pattern.size()) < want) {
      const index_t s = src_law.draw(rng);
      if (std::find(used.begin(), used.end(), s) != used.end()) continue;
      used.push_back(s);
      pattern.push_back({s, 0.5 + uniform01(rng)});
    }
    double norm_sq = 0.0;
    for (const auto& e : pattern) norm_sq += e.value * e.value;
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& e : pattern) e.value *= inv;
    std::sort(pattern.begin(), pattern.end(),
              [](const PatternEntry& a, const PatternEntry& b) {
                return a.src < b.src;
              });
    patterns.push_back(std::move(pattern));
  }

  std::vector<int> pattern_of_dst(static_cast<size_t>(config.destinations));
  for (auto& p : pattern_of_dst)
    p = static_cast<int>(rng() % static_cast<std::uint64_t>(config.patterns));

  const auto key_of = [&](index_t s, index_t d, index_t b) {
    return (s * config.destinations + d) * config.bins + b;
  };

  std::unordered_map<index_t, double> cell_values;
  std::vector<index_t> creation_order;
  cell_values.reserve(static_cast<size_t>(config.target_nnz) * 2);
  const auto bump = [&](index_t key, double value) {
    const auto [it, inserted] = cell_values.emplace(key, value);
    if (inserted) {
      creation_order.push_back(key);
    } else {
      it->second += value;
    }
  };

  // One pattern placement per (dst, bin) fiber; a redraw on collision keeps
  // fiber norms in the scale range instead of stacking placements.
  std::unordered_set<index_t> placed_fibers;

  // Ramp-up: when the time range allows it, the opening bins carry only the
  // busiest destination going through every pattern once (a main server
  // coming online before the rest of the traffic starts).
  const index_t main_dst = dst_law.assignment.front();
  index_t first_open_bin = 0;
  if (config.bins > 4 * static_cast<index_t>(config.patterns)) {
    for (int p = 0; p < config.patterns; ++p) {
      placed_fibers.insert(main_dst * config.bins + p);
      for (const PatternEntry& e : patterns[static_cast<size_t>(p)])
        bump(key_of(e.src, main_dst, p), 6.0 * e.value);
    }
    first_open_bin = config.patterns;
  }
  const std::uint64_t open_bins =
      static_cast<std::uint64_t>(config.bins - first_open_bin);
  const auto draw_bin = [&]() {
    return first_open_bin + static_cast<index_t>(rng() % open_bins);
  };

  while (static_cast<index_t>(cell_values.size()) < config.target_nnz) {
    if (config.noise_fraction > 0.0 &&
        uniform01(rng) < config.noise_fraction) {
      bump(key_of(src_law.draw(rng), dst_law.draw(rng), draw_bin()), 1.0);
      continue;
    }
    index_t dst = dst_law.draw(rng);
    index_t bin = draw_bin();
    for (int attempt = 0; attempt < 32; ++attempt) {
      if (placed_fibers.insert(dst * config.bins + bin).second) break;
      dst = dst_law.draw(rng);
      bin = draw_bin();
    }
    const double scale =
        std::clamp(std::exp(normal(rng, std::log(3.0), 0.55)), 1.0, 8.0);
    for (const PatternEntry& e :
         patterns[static_cast<size_t>(pattern_of_dst[static_cast<size_t>(dst)])])
      bump(key_of(e.src, dst, bin), scale * e.value);
  }

  // Trim the newest cells so nnz lands exactly on target.
  while (static_cast<index_t>(cell_values.size()) > config.target_nnz) {
    cell_values.erase(creation_order.back());
    creation_order.pop_back();
  }

  std::vector<index_t> indices;
  std::vector<double> values;
  indices.reserve(cell_values.size() * 3);
  values.reserve(cell_values.size());
  for (index_t key : creation_order) {
    const auto it = cell_values.find(key);
    if (it == cell_values.end()) continue;
    indices.push_back(key / (config.destinations * config.bins));
    indices.push_back((key / config.bins) % config.destinations);
    indices.push_back(key % config.bins);
    values.push_back(it->second);
  }

  TrafficTensor traffic;
  traffic.bin_width = 1;
  traffic.t_min = 0;
  traffic.src_labels.reserve(static_cast<size_t>(config.sources));
  for (index_t i = 0; i < config.sources; ++i)
    traffic.src_labels.push_back(std::to_string(i + 1));
  traffic.dst_labels.reserve(static_cast<size_t>(config.destinations));
  for (index_t i = 0; i < config.destinations; ++i)
    traffic.dst_labels.push_back(std::to_string(i + 1));
  traffic.tensor =
      SparseTensor({config.sources, config.destinations, config.bins},
                   std::move(indices), std::move(values));
  return traffic;
}

void write_edge_list(const TrafficTensor& traffic, std::ostream& out) {
  const SparseTensor& x = traffic.tensor;
  out << "% synthetic traffic: src dst weight time\n";
  std::vector<index_t> order(static_cast<size_t>(x.nnz()));
  std::iota(order.begin(), order.end(), index_t{0});
  std::sort(order.begin(), order.end(), [&](index_t a, index_t b) {
    const auto ia = x.index(a);
    const auto ib = x.index(b);
    if (ia[2] != ib[2]) return ia[2] < ib[2];
    if (ia[0] != ib[0]) return ia[0] < ib[0];
    return ia[1] < ib[1];
  });
  char buf[64];
  for (index_t i : order) {
    const auto idx = x.index(i);
    std::snprintf(buf, sizeof(buf), "%.17g", x.value(i));
    out << traffic.src_labels[static_cast<size_t>(idx[0])] << '\t'
        << traffic.dst_labels[static_cast<size_t>(idx[1])] << '\t' << buf
        << '\t' << traffic.t_min + idx[2] * traffic.bin_width << '\n';
  }
}

}  // namespace ctd
