#include "rmflab/experiment.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

namespace {

using namespace rmflab;

ExperimentConfig small_sim_config() {
  ExperimentConfig cfg;
  cfg.command = "simulate";
  cfg.base_seed = 1;
  cfg.n_seeds = 8;
  cfg.x_max = 2e4;
  cfg.grid_gamma = 0.5;
  cfg.workers = 2;
  return cfg;
}

TEST(Config, FileParsingAndOverrides) {
  const std::string path = ::testing::TempDir() + "rmflab_cfg.txt";
  {
    std::ofstream out(path);
    out << "# comment line\n"
        << "seed = 0x10\n"
        << "seeds = 5\n"
        << "x_max = 1e5\n"
        << "model = cmult\n"
        << "format = json\n"
        << "workers = 3\n";
  }
  ExperimentConfig cfg;
  load_config_file(cfg, path);
  EXPECT_EQ(cfg.base_seed, 16u);
  EXPECT_EQ(cfg.n_seeds, 5u);
  EXPECT_EQ(cfg.x_max, 1e5);
  EXPECT_EQ(cfg.model, Model::CompletelyMultiplicativeRademacher);
  EXPECT_EQ(cfg.format, ExperimentConfig::Format::Json);
  EXPECT_EQ(cfg.workers, 3);
  // CLI-style override after the file load.
  apply_config_line(cfg, "workers", "7");
  EXPECT_EQ(cfg.workers, 7);
  std::remove(path.c_str());
}

TEST(Config, RejectsBadInput) {
  ExperimentConfig cfg;
  EXPECT_THROW(apply_config_line(cfg, "nonsense", "1"), std::invalid_argument);
  EXPECT_THROW(apply_config_line(cfg, "format", "xml"), std::invalid_argument);
  cfg.n_seeds = 0;
  EXPECT_THROW(cfg.seeds(), std::invalid_argument);
}

TEST(Config, SeedListVerbatim) {
  ExperimentConfig cfg;
  apply_config_line(cfg, "seed_list", "3,5,0x10");
  EXPECT_EQ(cfg.seeds(), (std::vector<std::uint64_t>{3, 5, 16}));
  EXPECT_EQ(cfg.seed_text, "3,5,0x10");
}

TEST(Fmt17, RoundTripsDoubles) {
  for (double x : {1.0, 1.0 / 3.0, 2.2844570503761732, 1e-300, -17.25}) {
    const std::string s = fmt17(x);
    EXPECT_EQ(std::stod(s), x) << s;
  }
}

TEST(Simulate, ShapeContract) {
  const ExperimentConfig cfg = small_sim_config();
  const ExperimentReport rep = cmd_simulate(cfg);
  ASSERT_FALSE(rep.sections.empty());
  const ReportSection& series = rep.sections.front();
  EXPECT_EQ(series.name, "series");
  const std::vector<double> cp = checkpoint_grid(cfg.grid_gamma, cfg.x_max);
  EXPECT_EQ(series.rows.size(), cfg.n_seeds * cp.size());
  EXPECT_EQ(series.columns[0], "seed");
  EXPECT_EQ(series.columns[2], "checkpoint");
  // statistic columns finite
  for (const auto& row : series.rows) {
    EXPECT_TRUE(std::isfinite(std::stod(row[6])));
    EXPECT_TRUE(std::isfinite(std::stod(row[9])));
  }
}

TEST(Simulate, WorkerCountInvariance) {
  ExperimentConfig cfg = small_sim_config();
  cfg.workers = 1;
  const ExperimentReport r1 = cmd_simulate(cfg);
  cfg.workers = 8;
  const ExperimentReport r8 = cmd_simulate(cfg);
  nlohmann::json j1 = report_payload_json(r1);
  nlohmann::json j8 = report_payload_json(r8);
  j8["config"]["workers"] = j1["config"]["workers"];
  EXPECT_EQ(j1.dump(), j8.dump());
}

TEST(Simulate, ByteReproducible) {
  const ExperimentConfig cfg = small_sim_config();
  const ExperimentReport r1 = cmd_simulate(cfg);
  const ExperimentReport r2 = cmd_simulate(cfg);
  std::ostringstream s1, s2;
  write_csv(r1, s1);
  write_csv(r2, s2);
  EXPECT_EQ(s1.str(), s2.str());
}

TEST(Simulate, RejectsZeroSeeds) {
  ExperimentConfig cfg = small_sim_config();
  cfg.n_seeds = 0;
  EXPECT_THROW(cmd_simulate(cfg), std::invalid_argument);
}

TEST(Simulate, ResourceGuard) {
  ExperimentConfig cfg = small_sim_config();
  cfg.x_max = 1e10;
  EXPECT_THROW(cmd_simulate(cfg), resource_error);
}

TEST(CsvWriter, CompleteFooterAndEscaping) {
  ExperimentReport rep;
  rep.config_echo.emplace_back("command", "test");
  ReportSection& sec = rep.section("demo", {"a", "b"});
  sec.rows.push_back({"1", "needs,quoting"});
  rep.verdicts.push_back(
      make_verdict("demo", 1.0, 2.0, 0.1, true, "band", "why, indeed"));
  std::ostringstream os;
  write_csv(rep, os);
  const std::string text = os.str();
  EXPECT_NE(text.find("# status=complete"), std::string::npos);
  EXPECT_NE(text.find("\"needs,quoting\""), std::string::npos);
  EXPECT_NE(text.find("\"why, indeed\""), std::string::npos);

  rep.complete = false;
  std::ostringstream os2;
  write_csv(rep, os2);
  EXPECT_NE(os2.str().find("# status=incomplete"), std::string::npos);
}

TEST(JsonWriter, PayloadExcludesWallTime) {
  ExperimentReport rep;
  rep.config_echo.emplace_back("command", "test");
  rep.wall_ms = 123.0;
  const nlohmann::json payload = report_payload_json(rep);
  EXPECT_EQ(payload.find("meta"), payload.end());
  std::ostringstream os;
  ExperimentConfig cfg;
  cfg.format = ExperimentConfig::Format::Json;
  write_report(rep, cfg, os);
  EXPECT_NE(os.str().find("wall_ms"), std::string::npos);
}

TEST(Schedule, TableContract) {
  ExperimentConfig cfg;
  cfg.command = "schedule";
  cfg.K = 2;
  cfg.ell = 5;
  cfg.gamma = 1e-3;
  const ExperimentReport rep = cmd_schedule(cfg);
  ASSERT_EQ(rep.sections.size(), 1u);
  const ReportSection& sec = rep.sections[0];
  EXPECT_EQ(sec.columns,
            (std::vector<std::string>{"ell", "j", "llog_y", "j_star_flag"}));
  // j* and J recorded in the echo; J matches a scan.
  const ScheduleParams params = ScheduleParams::from_epsilon(1e-3, 12.5);
  const int J = J_for(params, 5, big_point(params, 5));
  EXPECT_EQ(sec.rows.size(), static_cast<std::size_t>(J + 1));
}

TEST(Schedule, RefusesEllBelowK) {
  ExperimentConfig cfg;
  cfg.command = "schedule";
  cfg.K = 2;
  cfg.ell = 2;
  EXPECT_THROW(cmd_schedule(cfg), std::invalid_argument);
}

TEST(ChaosProbeCmd, TableColumns) {
  ExperimentConfig cfg;
  cfg.command = "chaos-probe";
  cfg.chaos_samples = 100;
  cfg.chaos_q = 0.5;
  cfg.workers = 2;
  const ExperimentReport rep = cmd_chaos_probe(cfg);
  ASSERT_EQ(rep.sections.size(), 1u);
  EXPECT_EQ(rep.sections[0].columns,
            (std::vector<std::string>{"y", "q", "estimate", "stderr",
                                      "reference", "ratio"}));
  EXPECT_EQ(rep.sections[0].rows.size(), 3u);
}

TEST(IdentityCheckCmd, PassesAtSmallScale) {
  ExperimentConfig cfg;
  cfg.command = "identity-check";
  cfg.n_seeds = 3;
  cfg.x_max = 1e3;
  cfg.workers = 2;
  const ExperimentReport rep = cmd_identity_check(cfg);
  EXPECT_EQ(rep.exit_code, 0);
  ASSERT_EQ(rep.verdicts.size(), 1u);
  EXPECT_TRUE(rep.verdicts[0].pass);
}

TEST(LowerProbe, WindowMaxDominatesInterior) {
  ExperimentConfig cfg;
  cfg.command = "lower-probe";
  cfg.n_seeds = 4;
  cfg.x_max = 1e5;
  cfg.lambda = 1.4;
  cfg.workers = 2;
  const ExperimentReport rep = cmd_lower_probe(cfg);
  ASSERT_FALSE(rep.sections.empty());
  // every reported max is >= 0 and the verdict exists
  ASSERT_EQ(rep.verdicts.size(), 1u);
  for (const auto& row : rep.sections[0].rows)
    EXPECT_GE(std::stod(row[3]), 0.0);
}

TEST(LowerProbe, LadderTooShortIsResourceError) {
  ExperimentConfig cfg;
  cfg.command = "lower-probe";
  cfg.x_max = 20.0;
  cfg.lambda = 3.0;
  EXPECT_THROW(cmd_lower_probe(cfg), resource_error);
}

TEST(Verify, UnknownSuiteRejected) {
  ExperimentConfig cfg;
  cfg.command = "verify";
  cfg.suites = {"no-such-suite"};
  EXPECT_THROW(cmd_verify(cfg), std::invalid_argument);
}

TEST(Verify, SingleSuiteRuns) {
  ExperimentConfig cfg;
  cfg.command = "verify";
  cfg.suites = {"trig"};
  cfg.workers = 2;
  const ExperimentReport rep = cmd_verify(cfg);
  EXPECT_EQ(rep.exit_code, 0);
  for (const Verdict& v : rep.verdicts) EXPECT_TRUE(v.pass) << v.name;
}

TEST(RunCommand, DispatchAndWallTime) {
  ExperimentConfig cfg = small_sim_config();
  cfg.n_seeds = 2;
  const ExperimentReport rep = run_command(cfg);
  EXPECT_GT(rep.wall_ms, 0.0);
  EXPECT_THROW(
      [] {
        ExperimentConfig bad;
        bad.command = "explode";
        run_command(bad);
      }(),
      std::invalid_argument);
}

}  // namespace
