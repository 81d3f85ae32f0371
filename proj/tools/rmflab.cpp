// Command-line front end: seeded simulation runs, the verifier suites, and
// the schedule/probe tables. Exit codes: 0 pass, 1 verdict failure,
// 2 usage/config error, 3 resource error.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rmflab/experiment.hpp"

namespace {

using rmflab::ExperimentConfig;

struct FlagOverrides {
  std::string seed, seed_list, model, format, out, config;
  double x_max = -1, gamma = -1, grid_gamma = -1, lambda = -1, threshold = -1;
  double chaos_q = -1;
  long long seeds = -1, K = -1, ell = -1, workers = -1, chaos_samples = -1;
};

void add_common_flags(CLI::App* cmd, FlagOverrides& f) {
  cmd->add_option("--seed", f.seed, "base seed (decimal or 0x hex)");
  cmd->add_option("--seeds", f.seeds, "number of seeds (base, base+1, ...)");
  cmd->add_option("--seed-list", f.seed_list, "explicit comma-separated seeds");
  cmd->add_option("--x-max", f.x_max, "upper range of n");
  cmd->add_option("--model", f.model, "rademacher | cmult | steinhaus");
  cmd->add_option("--gamma", f.gamma, "schedule gamma (paper range (0,1/320))");
  cmd->add_option("--grid-gamma", f.grid_gamma,
                  "checkpoint grid exponent for simulate");
  cmd->add_option("--K", f.K, "schedule K (= floor(25/epsilon))");
  cmd->add_option("--ell", f.ell, "schedule ell");
  cmd->add_option("--lambda", f.lambda, "lower-bound ladder growth");
  cmd->add_option("--threshold", f.threshold, "lower-probe threshold c");
  cmd->add_option("--chaos-q", f.chaos_q, "chaos probe moment q");
  cmd->add_option("--chaos-samples", f.chaos_samples, "chaos probe samples");
  cmd->add_option("--out", f.out, "output path (default stdout)");
  cmd->add_option("--format", f.format, "csv | json");
  cmd->add_option("--workers", f.workers, "worker threads (0 = hardware)");
  cmd->add_option("--config", f.config, "key=value config file");
}

void apply_overrides(ExperimentConfig& cfg, const FlagOverrides& f) {
  using rmflab::apply_config_line;
  if (!f.config.empty()) rmflab::load_config_file(cfg, f.config);
  if (!f.seed.empty()) apply_config_line(cfg, "seed", f.seed);
  if (f.seeds >= 0) cfg.n_seeds = static_cast<std::size_t>(f.seeds);
  if (!f.seed_list.empty()) apply_config_line(cfg, "seed_list", f.seed_list);
  if (f.x_max >= 0) cfg.x_max = f.x_max;
  if (!f.model.empty()) cfg.model = rmflab::model_from_name(f.model);
  if (f.gamma >= 0) cfg.gamma = f.gamma;
  if (f.grid_gamma >= 0) cfg.grid_gamma = f.grid_gamma;
  if (f.K >= 0) cfg.K = static_cast<int>(f.K);
  if (f.ell >= 0) cfg.ell = static_cast<int>(f.ell);
  if (f.lambda >= 0) cfg.lambda = f.lambda;
  if (f.threshold >= 0) cfg.threshold_c = f.threshold;
  if (f.chaos_q >= 0) cfg.chaos_q = f.chaos_q;
  if (f.chaos_samples >= 0)
    cfg.chaos_samples = static_cast<std::size_t>(f.chaos_samples);
  if (!f.out.empty()) cfg.out_path = f.out;
  if (!f.format.empty()) apply_config_line(cfg, "format", f.format);
  if (f.workers >= 0) cfg.workers = static_cast<int>(f.workers);
}

int emit(const rmflab::ExperimentReport& rep, const ExperimentConfig& cfg) {
  if (cfg.out_path.empty()) {
    rmflab::write_report(rep, cfg, std::cout);
  } else {
    std::ofstream out(cfg.out_path);
    if (!out) {
      std::cerr << "error: cannot open output path " << cfg.out_path << "\n";
      return 2;
    }
    rmflab::write_report(rep, cfg, out);
  }
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulation and verification lab for weighted sums of "
               "Rademacher random multiplicative functions"};
  app.require_subcommand(1);

  FlagOverrides flags;
  std::vector<std::string> suite_args;

  CLI::App* c_sim = app.add_subcommand("simulate", "growth curves for M_f");
  CLI::App* c_low = app.add_subcommand("lower-probe",
                                       "windowed max |M_f| ladder statistic");
  CLI::App* c_ver = app.add_subcommand("verify", "run named verdict suites");
  c_ver->add_option("suites", suite_args, "suite names (default: all)");
  CLI::App* c_sch = app.add_subcommand("schedule", "print the bucket table");
  CLI::App* c_cha = app.add_subcommand("chaos-probe",
                                       "fractional chaos moments vs envelope");
  CLI::App* c_ide = app.add_subcommand("identity-check",
                                       "two-sided checks of the f* identities");
  CLI::App* c_cal = app.add_subcommand(
      "calibrate", "rerun the pilot experiments behind the recorded bands");
  for (CLI::App* c : {c_sim, c_low, c_ver, c_sch, c_cha, c_ide, c_cal})
    add_common_flags(c, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  ExperimentConfig cfg;
  try {
    apply_overrides(cfg, flags);
    if (c_sim->parsed()) cfg.command = "simulate";
    if (c_low->parsed()) cfg.command = "lower-probe";
    if (c_ver->parsed()) {
      cfg.command = "verify";
      if (!suite_args.empty()) cfg.suites = suite_args;
    }
    if (c_sch->parsed()) cfg.command = "schedule";
    if (c_cha->parsed()) cfg.command = "chaos-probe";
    if (c_ide->parsed()) cfg.command = "identity-check";

    if (c_cal->parsed()) {
      // Pilot reruns: prints suggested constants for pilot.hpp.
      cfg.command = "lower-probe";
      cfg.n_seeds = cfg.n_seeds == 20 ? 200 : cfg.n_seeds;
      cfg.x_max = 1e7;
      const rmflab::ExperimentReport rep = rmflab::run_command(cfg);
      std::vector<double> stats;
      for (const auto& sec : rep.sections)
        if (sec.name == "windows")
          for (const auto& row : sec.rows)
            if (row[5] != "skipped-empty") stats.push_back(std::stod(row[4]));
      const rmflab::Quantiles q = rmflab::compute_quantiles(stats);
      std::cout << "# lower-probe scaled statistic quantiles\n"
                << "min=" << rmflab::fmt17(q.min) << " p5=" << rmflab::fmt17(q.p5)
                << " p50=" << rmflab::fmt17(q.p50)
                << " max=" << rmflab::fmt17(q.max) << "\n"
                << "suggested kLowerProbeThreshold (0.9 * p5): "
                << rmflab::fmt17(0.9 * q.p5) << "\n";

      cfg.command = "chaos-probe";
      cfg.chaos_q = 2.0 / 3.0;
      const rmflab::ExperimentReport rep2 = rmflab::run_command(cfg);
      double lo = 1e300, hi = 0.0;
      for (const auto& sec : rep2.sections)
        if (sec.name == "probe")
          for (const auto& row : sec.rows) {
            lo = std::min(lo, std::stod(row[5]));
            hi = std::max(hi, std::stod(row[5]));
          }
      std::cout << "# chaos q=2/3 ratio range over y in {1e2,1e3,1e4}\n"
                << "observed=[" << rmflab::fmt17(lo) << "," << rmflab::fmt17(hi)
                << "]\nsuggested band (x/ 4, x4): ["
                << rmflab::fmt17(lo / 4.0) << "," << rmflab::fmt17(hi * 4.0)
                << "]\n";
      return 0;
    }

    const rmflab::ExperimentReport rep = rmflab::run_command(cfg);
    return emit(rep, cfg);
  } catch (const rmflab::resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
