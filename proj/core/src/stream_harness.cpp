#include "ctd/stream_harness.hpp"

#include <chrono>
#include <cmath>
#include <utility>

#include "ctd/error.hpp"

namespace ctd {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

index_t default_step_samples(index_t sample_size) {
  return std::max<index_t>(
      1, static_cast<index_t>(std::llround(0.01 * static_cast<double>(sample_size))));
}

SparseTensor time_slab(const SparseTensor& x, index_t t0, index_t t1) {
  const int time_mode = x.order() - 1;
  if (time_mode < 0) throw ArgumentError("tensor has no modes");
  if (t0 < 0 || t1 < t0 || t1 > x.extent(time_mode))
    throw ArgumentError("time window out of range");
  std::vector<index_t> shape = x.shape();
  shape[static_cast<size_t>(time_mode)] = t1 - t0;
  std::vector<index_t> indices;
  std::vector<double> values;
  const size_t n = shape.size();
  for (index_t i = 0; i < x.nnz(); ++i) {
    const auto idx = x.index(i);
    const index_t t = idx[static_cast<size_t>(time_mode)];
    if (t < t0 || t >= t1) continue;
    for (size_t k = 0; k < n; ++k)
      indices.push_back(k == static_cast<size_t>(time_mode) ? idx[k] - t0
                                                            : idx[k]);
    values.push_back(x.value(i));
  }
  return SparseTensor(std::move(shape), std::move(indices), std::move(values));
}

StreamRunResult run_stream(const SparseTensor& x,
                           const HarnessOptions& options) {
  if (!(options.split > 0.0) || !(options.split < 1.0))
    throw ArgumentError("split must lie strictly inside (0, 1)");
  if (x.order() < 2) throw ArgumentError("a stream needs a time mode");
  const index_t horizon = x.shape().back();
  if (horizon < 5) throw ArgumentError("stream needs a time extent of at least 5");

  index_t historical = static_cast<index_t>(
      std::floor(options.split * static_cast<double>(horizon)));
  historical = std::clamp<index_t>(historical, 1, horizon - 1);
  const index_t d = options.step_samples
                        ? *options.step_samples
                        : default_step_samples(options.sample_size);

  StreamRunResult result;

  auto start = Clock::now();
  StreamState state = init_stream(time_slab(x, 0, historical), options.mode,
                                  options.sample_size, options.epsilon,
                                  options.seed, /*keep_history=*/false,
                                  options.exact_core);
  double elapsed = seconds_since(start);

  const auto evaluate = [&](index_t upto, double step_seconds) {
    const SparseTensor prefix = time_slab(x, 0, upto);
    const LRFactors factors = state.factors();
    EvalReport report;
    report.relative_error = relative_error(prefix, factors);
    report.memory_usage = memory_usage(prefix, factors);
    report.wall_time_seconds = step_seconds;
    report.kept_fibers = factors.kept_count();
    return report;
  };

  result.steps.push_back({0, evaluate(historical, elapsed)});

  EvalReport mean;
  const index_t dynamic_steps = horizon - historical;
  for (index_t k = 0; k < dynamic_steps; ++k) {
    const index_t t = historical + k;
    const SparseTensor slab = time_slab(x, t, t + 1);
    start = Clock::now();
    state = ctd_d_step(std::move(state), slab, d);
    elapsed = seconds_since(start);
    const EvalReport report = evaluate(t + 1, elapsed);
    result.steps.push_back({k + 1, report});
    mean.relative_error += report.relative_error;
    mean.memory_usage += report.memory_usage;
    mean.wall_time_seconds += report.wall_time_seconds;
    mean.kept_fibers += report.kept_fibers;
  }
  mean.relative_error /= static_cast<double>(dynamic_steps);
  mean.memory_usage /= static_cast<double>(dynamic_steps);
  mean.wall_time_seconds /= static_cast<double>(dynamic_steps);
  mean.kept_fibers = result.steps.back().eval.kept_fibers;
  result.mean = mean;
  result.factors = state.factors();
  return result;
}

}  // namespace ctd
