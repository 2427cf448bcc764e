#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ctd/ctd_dynamic.hpp"
#include "ctd/evaluation.hpp"
#include "ctd/factors.hpp"
#include "ctd/sparse_tensor.hpp"

namespace ctd {

/// Historical/incoming split protocol: the leading fraction of time steps is
/// decomposed statically, the remainder is fed slab by slab.
struct HarnessOptions {
  int mode = 0;
  index_t sample_size = 100;       // static sample size s
  std::optional<index_t> step_samples;  // d; default max(1, round(0.01 * s))
  double split = 0.8;
  double epsilon = kDefaultEpsilon;
  std::uint64_t seed = kDefaultSeed;
  bool exact_core = false;
};

index_t default_step_samples(index_t sample_size);

struct StepReport {
  index_t step = 0;  // 0 = static bootstrap, then one per incoming slab
  EvalReport eval;
};

struct StreamRunResult {
  std::vector<StepReport> steps;
  /// Averages over the dynamic steps only.
  EvalReport mean;
  LRFactors factors;
};

/// Runs the split protocol and evaluates every step against the tensor
/// grown so far. Requires time extent >= 5 and split in (0, 1); the split
/// is floor(split * T) historical slabs, clamped so both parts are nonempty.
StreamRunResult run_stream(const SparseTensor& x, const HarnessOptions& options);

/// Sub-tensor of the time steps [t0, t1), re-based to time extent t1 - t0.
SparseTensor time_slab(const SparseTensor& x, index_t t0, index_t t1);

}  // namespace ctd
