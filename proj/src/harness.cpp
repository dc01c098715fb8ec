#include "swan/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "swan/baseline.hpp"
#include "swan/opt_sa.hpp"
#include "swan/opt_ss.hpp"

namespace swan {

namespace {

uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

uint64_t Rng::next() {
  state += 0x9e3779b97f4a7c15ULL;
  return mix64(state);
}

double Rng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

uint64_t stream_seed(uint64_t seed, uint64_t point, uint64_t trial) {
  uint64_t s = mix64(seed + 0x9e3779b97f4a7c15ULL);
  s = mix64(s ^ (point + 0xbf58476d1ce4e5b9ULL));
  s = mix64(s ^ (trial + 0x94d049bb133111ebULL));
  return s;
}

std::vector<User> sample_users(int num_users, double region_dx_m,
                               double region_dy_m,
                               std::span<const double> powers_w, Rng& rng) {
  if (num_users < 1) throw std::invalid_argument("sample_users: K >= 1");
  if (powers_w.empty() ||
      (powers_w.size() != 1 &&
       powers_w.size() != static_cast<size_t>(num_users)))
    throw std::invalid_argument("sample_users: powers arity");
  std::vector<User> users;
  users.reserve(num_users);
  for (int k = 0; k < num_users; ++k) {
    User u;
    u.x_m = rng.uniform(-region_dx_m / 2.0, region_dx_m / 2.0);
    u.y_m = rng.uniform(-region_dy_m / 2.0, region_dy_m / 2.0);
    u.power_w = powers_w.size() == 1 ? powers_w[0] : powers_w[k];
    users.push_back(u);
  }
  return users;
}

void ExperimentSpec::validate() const {
  config.validate();
  if (trials < 1) throw std::invalid_argument("spec: trials >= 1");
  if (num_users < 1) throw std::invalid_argument("spec: num_users >= 1");
  if (grid_points < 2) throw std::invalid_argument("spec: grid_points >= 2");
  if (!(region_dy_m >= 0.0)) throw std::invalid_argument("spec: region_dy_m");
  if (!(user_power_w > 0.0)) throw std::invalid_argument("spec: user power");
  if (kind != SweepKind::kConvergence) {
    if (values.empty()) throw std::invalid_argument("spec: no sweep values");
    for (const double v : values)
      if (!(v > 0.0)) throw std::invalid_argument("spec: sweep values > 0");
  }
  switch (kind) {
    case SweepKind::kDx:
      if (!(segment_length_m > 0.0))
        throw std::invalid_argument("spec: segment_length_m > 0");
      for (const double v : values) {
        const double m = v / segment_length_m;
        if (std::abs(m - std::round(m)) > 1e-9)
          throw std::invalid_argument(
              "spec: span must be an integer multiple of the segment length");
      }
      break;
    case SweepKind::kSegmentsFixedSpan:
      if (!(span_m > 0.0)) throw std::invalid_argument("spec: span_m > 0");
      break;
    case SweepKind::kSegmentsFixedLength:
      if (!(segment_length_m > 0.0))
        throw std::invalid_argument("spec: segment_length_m > 0");
      break;
    case SweepKind::kConvergence:
      if (num_segments < 1)
        throw std::invalid_argument("spec: num_segments >= 1");
      if (!(segment_length_m > 0.0))
        throw std::invalid_argument("spec: segment_length_m > 0");
      break;
  }
}

WaveguideLayout layout_for_point(const ExperimentSpec& spec, double value) {
  WaveguideLayout layout;
  switch (spec.kind) {
    case SweepKind::kDx:
      layout.num_segments =
          static_cast<int>(std::round(value / spec.segment_length_m));
      layout.segment_length_m = spec.segment_length_m;
      break;
    case SweepKind::kSegmentsFixedSpan:
      layout.num_segments = static_cast<int>(std::round(value));
      layout.segment_length_m = spec.span_m / layout.num_segments;
      break;
    case SweepKind::kSegmentsFixedLength:
      layout.num_segments = static_cast<int>(std::round(value));
      layout.segment_length_m = spec.segment_length_m;
      break;
    case SweepKind::kConvergence:
      layout.num_segments = spec.num_segments;
      layout.segment_length_m = spec.segment_length_m;
      break;
  }
  layout.first_feed_m = -layout.span() / 2.0;
  layout.validate();
  return layout;
}

RateReport run_arm(std::span<const User> users, const WaveguideLayout& layout,
                   const SystemConfig& cfg, Protocol protocol, Scheme scheme,
                   int grid_points, double ao_epsilon, int ao_max_iters) {
  switch (protocol) {
    case Protocol::kSegmentSelection:
      return optimize_ss(users, layout, cfg, scheme, grid_points).report;
    case Protocol::kSegmentAggregation:
      return optimize_sa(users, layout, cfg, scheme, grid_points, ao_epsilon,
                         ao_max_iters)
          .report;
    case Protocol::kPassBaseline:
      return optimize_pass(users, cfg, layout.first_feed_m, layout.span(),
                           scheme, grid_points)
          .report;
  }
  throw std::invalid_argument("run_arm: unknown protocol");
}

namespace {

std::vector<Arm> arms_for(const ExperimentSpec& spec) {
  std::vector<Arm> arms;
  if (spec.kind == SweepKind::kConvergence) {
    for (const Scheme s : spec.schemes)
      if (s != Scheme::kPsTdma)
        arms.push_back({Protocol::kSegmentAggregation, s});
    if (arms.empty())
      throw std::invalid_argument(
          "spec: convergence runs need pm_tdma or noma");
    return arms;
  }
  for (const Protocol p : spec.protocols)
    for (const Scheme s : spec.schemes) arms.push_back({p, s});
  if (arms.empty()) throw std::invalid_argument("spec: no arms selected");
  return arms;
}

// Sum-rate equivalent of the raw optimizer objective at each iteration.
std::vector<double> trace_to_rates(const std::vector<double>& objective,
                                   Scheme scheme, int num_segments,
                                   int num_users, const SystemConfig& cfg) {
  std::vector<double> rates;
  rates.reserve(objective.size());
  for (const double v : objective) {
    if (scheme == Scheme::kPmTdma) {
      rates.push_back(v / num_users);
    } else {
      const double snr_sum = cfg.eta() / (num_segments * cfg.noise_power_w) * v;
      rates.push_back(std::log1p(snr_sum) / std::numbers::ln2);
    }
  }
  return rates;
}

void run_trial_range(const ExperimentSpec& spec, int point_index,
                     const WaveguideLayout& layout,
                     const std::vector<Arm>& arms, int t_begin, int t_end,
                     std::vector<std::vector<TrialOutcome>>& per_arm) {
  const double power[1] = {spec.user_power_w};
  for (int t = t_begin; t < t_end; ++t) {
    Rng rng(stream_seed(spec.seed, static_cast<uint64_t>(point_index),
                        static_cast<uint64_t>(t)));
    const auto users = sample_users(spec.num_users, layout.span(),
                                    spec.region_dy_m, power, rng);
    for (size_t a = 0; a < arms.size(); ++a) {
      const RateReport report =
          run_arm(users, layout, spec.config, arms[a].protocol, arms[a].scheme,
                  spec.grid_points, spec.ao_epsilon, spec.ao_max_iters);
      TrialOutcome outcome;
      outcome.sum_rate = report.sum_rate_bps_hz;
      if (spec.kind == SweepKind::kConvergence)
        outcome.rate_trace =
            trace_to_rates(report.trace, arms[a].scheme, layout.num_segments,
                           spec.num_users, spec.config);
      per_arm[a][t] = std::move(outcome);
    }
  }
}

}  // namespace

PointData run_point(const ExperimentSpec& spec, int point_index) {
  spec.validate();
  const double value = spec.kind == SweepKind::kConvergence
                           ? static_cast<double>(spec.num_segments)
                           : spec.values.at(point_index);
  const WaveguideLayout layout = layout_for_point(spec, value);

  PointData data;
  data.value = value;
  data.arms = arms_for(spec);
  data.per_arm.assign(data.arms.size(),
                      std::vector<TrialOutcome>(spec.trials));

  const int workers =
      std::max(1, std::min(spec.threads, spec.trials));
  if (workers == 1) {
    run_trial_range(spec, point_index, layout, data.arms, 0, spec.trials,
                    data.per_arm);
    return data;
  }
  std::vector<std::thread> pool;
  const int chunk = (spec.trials + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int t0 = w * chunk;
    const int t1 = std::min(spec.trials, t0 + chunk);
    if (t0 >= t1) break;
    pool.emplace_back([&, t0, t1] {
      run_trial_range(spec, point_index, layout, data.arms, t0, t1,
                      data.per_arm);
    });
  }
  for (auto& th : pool) th.join();
  return data;
}

double mean_of(std::span<const double> xs) {
  double acc = 0.0;
  for (const double x : xs) acc += x;
  return acc / static_cast<double>(xs.size());
}

double std_error_of(std::span<const double> xs) {
  const size_t n = xs.size();
  if (n < 2) return 0.0;
  const double mu = mean_of(xs);
  double acc = 0.0;
  for (const double x : xs) acc += (x - mu) * (x - mu);
  return std::sqrt(acc / (static_cast<double>(n - 1) * static_cast<double>(n)));
}

namespace {

const char* sweep_param_name(SweepKind kind) {
  switch (kind) {
    case SweepKind::kDx: return "dx_m";
    case SweepKind::kSegmentsFixedSpan:
    case SweepKind::kSegmentsFixedLength: return "num_segments";
    case SweepKind::kConvergence: return "iteration";
  }
  return "?";
}

}  // namespace

SweepResult run_sweep(const ExperimentSpec& spec) {
  spec.validate();
  SweepResult result;
  const int points =
      spec.kind == SweepKind::kConvergence
          ? 1
          : static_cast<int>(spec.values.size());
  for (int p = 0; p < points; ++p) {
    const PointData data = run_point(spec, p);
    if (spec.kind == SweepKind::kConvergence) {
      for (size_t a = 0; a < data.arms.size(); ++a) {
        size_t longest = 0;
        for (const auto& t : data.per_arm[a])
          longest = std::max(longest, t.rate_trace.size());
        // A converged trial holds its final value for the remaining rows.
        for (size_t i = 0; i < longest; ++i) {
          std::vector<double> at_iter;
          at_iter.reserve(data.per_arm[a].size());
          for (const auto& t : data.per_arm[a])
            at_iter.push_back(i < t.rate_trace.size() ? t.rate_trace[i]
                                                      : t.rate_trace.back());
          result.rows.push_back({sweep_param_name(spec.kind),
                                 static_cast<double>(i), data.arms[a].protocol,
                                 data.arms[a].scheme, mean_of(at_iter),
                                 std_error_of(at_iter), spec.trials});
        }
      }
      continue;
    }
    for (size_t a = 0; a < data.arms.size(); ++a) {
      std::vector<double> rates;
      rates.reserve(data.per_arm[a].size());
      for (const auto& t : data.per_arm[a]) rates.push_back(t.sum_rate);
      result.rows.push_back({sweep_param_name(spec.kind), data.value,
                             data.arms[a].protocol, data.arms[a].scheme,
                             mean_of(rates), std_error_of(rates),
                             spec.trials});
    }
  }
  return result;
}

namespace {

std::string fmt_g(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace

void write_csv(const SweepResult& result, std::ostream& os) {
  os << "sweep_param,value,protocol,scheme,mean_rate_bps_hz,stderr,trials\n";
  for (const SweepRow& row : result.rows) {
    os << row.sweep_param << ',' << fmt_g(row.value) << ','
       << to_string(row.protocol) << ',' << to_string(row.scheme) << ','
       << fmt_g(row.mean_rate) << ',' << fmt_g(row.std_error) << ','
       << row.trials << '\n';
  }
}

std::string to_csv(const SweepResult& result) {
  std::ostringstream os;
  write_csv(result, os);
  return os.str();
}

}  // namespace swan
