#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ctd/ctd_static.hpp"
#include "ctd/factors.hpp"
#include "ctd/traffic.hpp"

namespace ctd {

/// Ground truth for one injected attack: the victim destination, the time
/// bin, the participating sources, and the per-source weight added.
struct AttackSpec {
  index_t victim = 0;
  index_t bin = 0;
  std::vector<index_t> sources;
  double intensity = 0.0;
};

struct InjectOptions {
  index_t attacks = 1;
  /// Fraction of source hosts participating in each attack.
  double fraction = 0.20;
  /// Per-source weight. Unset: chosen so the attack fiber's norm is
  /// `intensity_multiplier` times the mean nonzero fiber norm of the
  /// background.
  std::optional<double> intensity;
  double intensity_multiplier = 20.0;
  std::uint64_t seed = kDefaultSeed;
};

struct InjectionResult {
  TrafficTensor traffic;
  std::vector<AttackSpec> attacks;
};

/// Adds `attacks` attacks, each on a distinct victim destination at a
/// uniformly drawn time bin, ceil(fraction * sources) participating hosts.
InjectionResult inject_ddos(TrafficTensor traffic, const InjectOptions& options);

/// Mean Euclidean norm over the nonzero mode-`mode` fibers.
double mean_fiber_norm(const SparseTensor& x, int mode);

struct Candidate {
  index_t dst = 0;
  index_t bin = 0;
  double norm = 0.0;
};

struct DetectionReport {
  std::vector<Candidate> candidates;
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
  /// Candidates matching an attack on both victim and time bin; victim
  /// identity alone decides recall/precision.
  index_t time_matches = 0;
};

/// Inspects R of a source-mode decomposition: groups kept fibers by
/// destination, keeps the earliest-accepted fiber per destination as its
/// representative, and flags representatives whose norm is strictly above
/// the mean representative norm.
std::vector<Candidate> detect_ddos(const LRFactors& factors);

DetectionReport score_detection(std::vector<Candidate> candidates,
                                std::span<const AttackSpec> attacks);

/// Slab-by-slab decomposition of the whole time range: a static pass on the
/// first slab, then one dynamic step per remaining slab.
LRFactors decompose_online(const SparseTensor& traffic, int mode, index_t d,
                           double epsilon, std::uint64_t seed);

}  // namespace ctd
