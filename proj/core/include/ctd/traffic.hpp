#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ctd/edge_list.hpp"
#include "ctd/sparse_tensor.hpp"

namespace ctd {

/// Source x destination x time-bin tensor built from traffic records, with
/// the label maps needed to report detections in input terms.
struct TrafficTensor {
  SparseTensor tensor;
  std::int64_t bin_width = 1;
  std::int64_t t_min = 0;
  std::vector<std::string> src_labels;
  std::vector<std::string> dst_labels;
};

/// Bins records at floor((t - t_min) / bin_width) and accumulates weights
/// per (src, dst, bin) cell. Every record must carry a timestamp.
TrafficTensor build_tensor(const EdgeList& edges, std::int64_t bin_width_seconds);

/// Synthetic traffic model: a small set of recurring source patterns
/// (services with stable client populations), Zipf-skewed destination
/// activity, log-normal per-fiber volumes, and optionally a fraction of
/// isolated single-packet events. Hits `target_nnz` cells exactly.
struct SyntheticConfig {
  index_t sources = 189;
  index_t destinations = 189;
  index_t bins = 1000;
  index_t target_nnz = 20511;
  int patterns = 8;
  double noise_fraction = 0.0;
  double zipf_exponent = 0.8;
  std::uint64_t seed = 42;
};

/// Defaults mirroring the CAIDA-scale traffic tensor (189 x 189 x 1000,
/// 20,511 nonzeros). Pattern-only background, no isolated noise.
SyntheticConfig caida_like();

/// Defaults mirroring the Haggle contact tensor (77 x 274 x 1567,
/// 27,972 nonzeros). More patterns plus irregular contact noise.
SyntheticConfig haggle_like();

TrafficTensor generate_traffic(const SyntheticConfig& config);

/// Emits the tensor as edge-list text (`src dst weight time`, 1-based host
/// labels, one line per cell, chronological order) parseable by
/// parse_edge_list.
void write_edge_list(const TrafficTensor& traffic, std::ostream& out);

}  // namespace ctd
