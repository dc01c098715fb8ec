#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "swan/model.hpp"

namespace swan {

/// Tiny deterministic generator (splitmix64). Every trial owns an independent
/// stream derived from (seed, sweep point, trial), so parallel and serial
/// runs produce bit-identical results.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next();
  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
};

uint64_t stream_seed(uint64_t seed, uint64_t point, uint64_t trial);

/// K users uniform over the rectangle [-dx/2, dx/2] x [-dy/2, dy/2].
/// `powers_w` holds either one shared power or one per user.
std::vector<User> sample_users(int num_users, double region_dx_m,
                               double region_dy_m,
                               std::span<const double> powers_w, Rng& rng);

enum class SweepKind {
  kDx,                  // values are span lengths; fixed segment length
  kSegmentsFixedSpan,   // values are segment counts; fixed overall span
  kSegmentsFixedLength, // values are segment counts; fixed segment length
  kConvergence          // single layout; reports objective per iteration
};

struct ExperimentSpec {
  SystemConfig config;
  SweepKind kind = SweepKind::kDx;
  std::vector<double> values;
  double segment_length_m = 1.0;  // kDx, kSegmentsFixedLength, kConvergence
  double span_m = 50.0;           // kSegmentsFixedSpan
  int num_segments = 10;          // kConvergence
  int trials = 100;
  uint64_t seed = 1;
  int num_users = 4;
  double region_dy_m = 20.0;
  double user_power_w = 0.01;
  std::vector<Protocol> protocols{Protocol::kSegmentSelection,
                                  Protocol::kSegmentAggregation};
  std::vector<Scheme> schemes{Scheme::kPsTdma, Scheme::kPmTdma, Scheme::kNoma};
  int grid_points = 10000;
  double ao_epsilon = 1e-4;
  int ao_max_iters = 50;
  int threads = 1;

  void validate() const;
};

/// Layout at one sweep point; the waveguide is centered on the origin so the
/// sampling region matches the span.
WaveguideLayout layout_for_point(const ExperimentSpec& spec, double value);

struct Arm {
  Protocol protocol;
  Scheme scheme;
};

struct TrialOutcome {
  double sum_rate = 0.0;
  std::vector<double> rate_trace;  // per-iteration sum-rate; convergence runs
};

struct PointData {
  double value = 0.0;
  std::vector<Arm> arms;
  std::vector<std::vector<TrialOutcome>> per_arm;  // [arm][trial]
};

/// Single (protocol, scheme) run on one user set.
RateReport run_arm(std::span<const User> users, const WaveguideLayout& layout,
                   const SystemConfig& cfg, Protocol protocol, Scheme scheme,
                   int grid_points, double ao_epsilon, int ao_max_iters);

/// All arms over all trials of one sweep point; each trial's user set is
/// shared across arms for paired comparisons.
PointData run_point(const ExperimentSpec& spec, int point_index);

struct SweepRow {
  std::string sweep_param;
  double value = 0.0;
  Protocol protocol;
  Scheme scheme;
  double mean_rate = 0.0;
  double std_error = 0.0;
  int trials = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

SweepResult run_sweep(const ExperimentSpec& spec);

double mean_of(std::span<const double> xs);
double std_error_of(std::span<const double> xs);

/// CSV with header sweep_param,value,protocol,scheme,mean_rate_bps_hz,stderr,trials.
void write_csv(const SweepResult& result, std::ostream& os);
std::string to_csv(const SweepResult& result);

}  // namespace swan
