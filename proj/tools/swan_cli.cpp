// Command-line front end: single-scenario evaluation and Monte-Carlo sweeps.
// stdout carries machine-readable JSON or CSV only; diagnostics go to stderr.
// Exit codes: 0 ok, 2 config/spec parse failure, 3 infeasible placement,
// 4 output I/O failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "swan/baseline.hpp"
#include "swan/channel.hpp"
#include "swan/config_io.hpp"
#include "swan/harness.hpp"
#include "swan/opt_sa.hpp"
#include "swan/opt_ss.hpp"
#include "swan/rates.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitIo = 4;

nlohmann::json ss_placement_json(const swan::SsPlacement& p) {
  return {{"segment", p.segment + 1}, {"position_m", p.position_m}};
}

double placement_rate(swan::Scheme scheme, std::vector<double>& snrs) {
  return scheme == swan::Scheme::kNoma ? swan::noma_sum_rate(snrs)
                                       : swan::tdma_sum_rate(snrs);
}

int run_eval(const std::string& config_path,
             const std::string& placement_path, swan::Protocol protocol,
             swan::Scheme scheme, int grid_q,
             std::optional<double> kappa_eval) {
  swan::Scenario sc;
  try {
    sc = swan::load_scenario(config_path);
  } catch (const std::exception& e) {
    std::cerr << "swan eval: " << e.what() << "\n";
    return kExitParse;
  }
  if (kappa_eval) sc.config.attenuation_db_per_m = *kappa_eval;

  nlohmann::json out;
  if (!placement_path.empty()) {
    swan::PlacementFile pf;
    try {
      std::ifstream in(placement_path);
      if (!in) throw std::runtime_error("cannot open " + placement_path);
      nlohmann::json j;
      in >> j;
      pf = swan::parse_placement(j);
    } catch (const std::exception& e) {
      std::cerr << "swan eval: " << e.what() << "\n";
      return kExitParse;
    }

    swan::RateReport report;
    report.scheme = scheme;
    try {
      if (pf.pass_position) {
        report.protocol = swan::Protocol::kPassBaseline;
        const double feed = sc.layout.first_feed_m;
        const double span = sc.layout.span();
        if (*pf.pass_position < feed - swan::kFeasibilityTol ||
            *pf.pass_position > feed + span + swan::kFeasibilityTol) {
          std::cerr << "swan eval: antenna outside the waveguide\n";
          return kExitInfeasible;
        }
        for (const swan::User& u : sc.users)
          report.per_user_snr.push_back(swan::snr(
              u, swan::pass_gain(u, *pf.pass_position, sc.config, feed, span),
              sc.config));
        out["placements"] = {{{"position_m", *pf.pass_position}}};
      } else {
        if (!swan::is_feasible(*pf.placement, sc.layout, sc.config)) {
          std::cerr << "swan eval: placement violates the layout constraints\n";
          return kExitInfeasible;
        }
        if (const auto* ss = std::get_if<swan::SsPlacement>(&*pf.placement)) {
          report.protocol = swan::Protocol::kSegmentSelection;
          for (const swan::User& u : sc.users)
            report.per_user_snr.push_back(swan::snr(
                u,
                std::norm(swan::ss_effective_channel(u, *ss, sc.layout,
                                                     sc.config)),
                sc.config));
          out["placements"] = {ss_placement_json(*ss)};
        } else {
          const auto& sa = std::get<swan::SaPlacement>(*pf.placement);
          report.protocol = swan::Protocol::kSegmentAggregation;
          for (const swan::User& u : sc.users)
            report.per_user_snr.push_back(swan::snr(
                u,
                std::norm(swan::sa_effective_channel(u, sa, sc.layout,
                                                     sc.config)),
                sc.config));
          out["placements"] = {{{"positions_m", sa.positions_m}}};
        }
      }
    } catch (const std::invalid_argument& e) {
      std::cerr << "swan eval: " << e.what() << "\n";
      return kExitParse;
    }
    report.sum_rate_bps_hz = placement_rate(scheme, report.per_user_snr);
    out.update(swan::report_to_json(report));
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  switch (protocol) {
    case swan::Protocol::kSegmentSelection: {
      const auto r =
          swan::optimize_ss(sc.users, sc.layout, sc.config, scheme, grid_q);
      nlohmann::json placements = nlohmann::json::array();
      for (const auto& p : r.placements)
        placements.push_back(ss_placement_json(p));
      out = swan::report_to_json(r.report);
      out["placements"] = placements;
      break;
    }
    case swan::Protocol::kSegmentAggregation: {
      const auto r =
          swan::optimize_sa(sc.users, sc.layout, sc.config, scheme, grid_q);
      nlohmann::json placements = nlohmann::json::array();
      for (const auto& p : r.placements)
        placements.push_back({{"positions_m", p.positions_m}});
      out = swan::report_to_json(r.report);
      out["placements"] = placements;
      break;
    }
    case swan::Protocol::kPassBaseline: {
      const auto r = swan::optimize_pass(sc.users, sc.config,
                                         sc.layout.first_feed_m,
                                         sc.layout.span(), scheme, grid_q);
      nlohmann::json placements = nlohmann::json::array();
      for (const double x : r.positions)
        placements.push_back({{"position_m", x}});
      out = swan::report_to_json(r.report);
      out["placements"] = placements;
      break;
    }
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_sweep_cmd(const std::string& spec_path, const std::string& out_path,
                  const std::string& json_out_path,
                  std::optional<uint64_t> seed, std::optional<int> trials,
                  std::optional<int> grid_q, std::optional<int> threads,
                  std::optional<double> kappa_eval) {
  swan::ExperimentSpec spec;
  try {
    spec = swan::load_experiment_spec(spec_path);
  } catch (const std::exception& e) {
    std::cerr << "swan sweep: " << e.what() << "\n";
    return kExitParse;
  }
  if (seed) spec.seed = *seed;
  if (trials) spec.trials = *trials;
  if (grid_q) spec.grid_points = *grid_q;
  if (threads) spec.threads = *threads;
  if (kappa_eval) spec.config.attenuation_db_per_m = *kappa_eval;

  // fail on an unwritable destination before the long computation
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "swan sweep: cannot open " << out_path << " for writing\n";
    return kExitIo;
  }
  std::ofstream jout;
  if (!json_out_path.empty()) {
    jout.open(json_out_path, std::ios::binary);
    if (!jout) {
      std::cerr << "swan sweep: cannot open " << json_out_path << "\n";
      return kExitIo;
    }
  }

  swan::SweepResult result;
  try {
    result = swan::run_sweep(spec);
  } catch (const std::exception& e) {
    std::cerr << "swan sweep: " << e.what() << "\n";
    return kExitParse;
  }

  swan::write_csv(result, out);
  out.flush();
  if (!out) {
    std::cerr << "swan sweep: write to " << out_path << " failed\n";
    return kExitIo;
  }
  if (jout.is_open()) {
    jout << swan::sweep_to_json(result).dump(2) << "\n";
    if (!jout) return kExitIo;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"segmented-waveguide pinching-antenna uplink simulator"};
  app.require_subcommand(1);

  std::string config_path, placement_path;
  std::string scheme_name = "ps_tdma", protocol_name = "ss";
  int grid_q = 10000;
  double kappa_eval = -1.0;
  bool kappa_set = false;

  auto* eval = app.add_subcommand("eval", "rates for one scenario");
  eval->add_option("--config", config_path, "scenario JSON")->required();
  eval->add_option("--placement", placement_path, "placement JSON");
  eval->add_option("--scheme", scheme_name, "ps_tdma | pm_tdma | noma");
  eval->add_option("--protocol", protocol_name, "ss | sa | pass");
  eval->add_option("--grid-q", grid_q, "grid points for 1-D searches");
  eval->add_option("--kappa-eval", kappa_eval,
                   "override attenuation (dB/m) for rate evaluation")
      ->check(CLI::NonNegativeNumber);

  std::string spec_path, out_path, json_out_path;
  uint64_t seed = 0;
  int trials = 0, threads = 0, sweep_grid_q = 0;
  double sweep_kappa = -1.0;
  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep to CSV");
  sweep->add_option("--spec", spec_path, "experiment spec JSON")->required();
  sweep->add_option("--out", out_path, "output CSV path")->required();
  sweep->add_option("--json-out", json_out_path, "optional JSON mirror");
  auto* seed_opt = sweep->add_option("--seed", seed, "override spec seed");
  auto* trials_opt =
      sweep->add_option("--trials", trials, "override spec trials");
  auto* grid_opt =
      sweep->add_option("--grid-q", sweep_grid_q, "override spec grid points");
  auto* threads_opt =
      sweep->add_option("--threads", threads, "worker threads over trials");
  auto* kappa_opt = sweep->add_option("--kappa-eval", sweep_kappa,
                                      "override attenuation (dB/m)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  kappa_set = eval->count("--kappa-eval") > 0;

  try {
    if (app.got_subcommand(eval)) {
      swan::Scheme scheme;
      swan::Protocol protocol;
      try {
        scheme = swan::parse_scheme(scheme_name);
        protocol = swan::parse_protocol(protocol_name);
      } catch (const std::exception& e) {
        std::cerr << "swan eval: " << e.what() << "\n";
        return kExitParse;
      }
      return run_eval(config_path, placement_path, protocol, scheme, grid_q,
                      kappa_set ? std::optional<double>(kappa_eval)
                                : std::nullopt);
    }
    return run_sweep_cmd(
        spec_path, out_path, json_out_path,
        *seed_opt ? std::optional<uint64_t>(seed) : std::nullopt,
        *trials_opt ? std::optional<int>(trials) : std::nullopt,
        *grid_opt ? std::optional<int>(sweep_grid_q) : std::nullopt,
        *threads_opt ? std::optional<int>(threads) : std::nullopt,
        *kappa_opt ? std::optional<double>(sweep_kappa) : std::nullopt);
  } catch (const std::exception& e) {
    std::cerr << "swan: " << e.what() << "\n";
    return 1;
  }
}
