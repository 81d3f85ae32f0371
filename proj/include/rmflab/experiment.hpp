#ifndef RMFLAB_EXPERIMENT_HPP
#define RMFLAB_EXPERIMENT_HPP

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "rmflab/arith.hpp"
#include "rmflab/euler.hpp"
#include "rmflab/partial_sums.hpp"
#include "rmflab/pilot.hpp"
#include "rmflab/schedule.hpp"
#include "rmflab/sign_oracle.hpp"
#include "rmflab/stats.hpp"
#include "rmflab/verify.hpp"

namespace rmflab {

// 17 significant digits, '.' decimal, no locale: round-trips doubles exactly
// and keeps reports byte-reproducible.
inline std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

struct ExperimentConfig {
  std::string command;
  std::uint64_t base_seed = 1;
  std::size_t n_seeds = 20;
  std::vector<std::uint64_t> explicit_seeds;  // overrides (base, count)
  std::string seed_text = "1";                // recorded verbatim
  double x_max = 1e6;
  Model model = Model::Rademacher;
  double grid_gamma = 0.5;  // checkpoint grid exponent for simulate
  double gamma = 1e-3;      // schedule gamma (paper range)
  int K = 2;
  int ell = 5;
  double lambda = 1.4;
  double threshold_c = pilot::kLowerProbeThreshold;
  double chaos_q = 2.0 / 3.0;
  std::size_t chaos_samples = 400;
  std::string out_path;  // empty: stdout
  enum class Format { Csv, Json } format = Format::Csv;
  int workers = 0;  // 0: hardware concurrency
  std::vector<std::string> suites{"all"};

  std::vector<std::uint64_t> seeds() const {
    if (!explicit_seeds.empty()) return explicit_seeds;
    if (n_seeds == 0) throw std::invalid_argument("config: zero seeds");
    std::vector<std::uint64_t> s(n_seeds);
    for (std::size_t i = 0; i < n_seeds; ++i) s[i] = base_seed + i;
    return s;
  }

  int effective_workers() const {
    if (workers > 0) return workers;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
  }

  std::vector<std::pair<std::string, std::string>> echo() const {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("command", command);
    kv.emplace_back("seed", seed_text);
    kv.emplace_back("seeds", std::to_string(seeds().size()));
    kv.emplace_back("x_max", fmt17(x_max));
    kv.emplace_back("model", model_name(model));
    kv.emplace_back("gamma", fmt17(gamma));
    kv.emplace_back("grid_gamma", fmt17(grid_gamma));
    kv.emplace_back("K", std::to_string(K));
    kv.emplace_back("ell", std::to_string(ell));
    kv.emplace_back("lambda", fmt17(lambda));
    kv.emplace_back("threshold_c", fmt17(threshold_c));
    kv.emplace_back("workers", std::to_string(workers));
    return kv;
  }
};

// Flat key=value config text; '#' starts a comment. CLI flags are applied
// after the file, so they override file values.
inline void apply_config_line(ExperimentConfig& cfg, const std::string& key,
                              const std::string& value) {
  if (key == "seed") {
    cfg.base_seed = std::stoull(value, nullptr, 0);
    cfg.seed_text = value;
  } else if (key == "seeds") {
    cfg.n_seeds = std::stoull(value);
  } else if (key == "seed_list") {
    cfg.explicit_seeds.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
      cfg.explicit_seeds.push_back(std::stoull(item, nullptr, 0));
    cfg.seed_text = value;
  } else if (key == "x_max") {
    cfg.x_max = std::stod(value);
  } else if (key == "model") {
    cfg.model = model_from_name(value);
  } else if (key == "gamma") {
    cfg.gamma = std::stod(value);
  } else if (key == "grid_gamma") {
    cfg.grid_gamma = std::stod(value);
  } else if (key == "K") {
    cfg.K = std::stoi(value);
  } else if (key == "ell") {
    cfg.ell = std::stoi(value);
  } else if (key == "lambda") {
    cfg.lambda = std::stod(value);
  } else if (key == "threshold") {
    cfg.threshold_c = std::stod(value);
  } else if (key == "chaos_q") {
    cfg.chaos_q = std::stod(value);
  } else if (key == "chaos_samples") {
    cfg.chaos_samples = std::stoull(value);
  } else if (key == "out") {
    cfg.out_path = value;
  } else if (key == "format") {
    if (value == "csv") cfg.format = ExperimentConfig::Format::Csv;
    else if (value == "json") cfg.format = ExperimentConfig::Format::Json;
    else throw std::invalid_argument("config: format must be csv|json");
  } else if (key == "workers") {
    cfg.workers = std::stoi(value);
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

inline void load_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw std::invalid_argument("config: bad line '" + line + "'");
      continue;
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

struct ReportSection {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct ExperimentReport {
  std::vector<std::pair<std::string, std::string>> config_echo;
  std::vector<ReportSection> sections;
  std::vector<Verdict> verdicts;
  double wall_ms = 0.0;  // excluded from the reproducible payload
  bool complete = true;
  int exit_code = 0;

  ReportSection& section(const std::string& name,
                         std::vector<std::string> columns) {
    sections.push_back(ReportSection{name, std::move(columns), {}});
    return sections.back();
  }
};

inline void write_csv(const ExperimentReport& r, std::ostream& os) {
  for (const auto& [k, v] : r.config_echo) os << "# " << k << "=" << v << "\n";
  for (const ReportSection& sec : r.sections) {
    os << "# section=" << sec.name << "\n";
    for (std::size_t i = 0; i < sec.columns.size(); ++i)
      os << (i ? "," : "") << sec.columns[i];
    os << "\n";
    std::size_t flushed = 0;
    for (const auto& row : sec.rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        os << (i ? "," : "") << csv_escape(row[i]);
      os << "\n";
      if (++flushed % 1024 == 0) os.flush();
    }
  }
  if (!r.verdicts.empty()) {
    os << "# section=verdicts\n";
    os << "verdict,lhs,rhs,tolerance,pass,class,diagnostics\n";
    for (const Verdict& v : r.verdicts)
      os << csv_escape(v.name) << "," << fmt17(v.lhs) << "," << fmt17(v.rhs)
         << "," << fmt17(v.tolerance) << "," << (v.pass ? 1 : 0) << ","
         << v.verdict_class << "," << csv_escape(v.diagnostics) << "\n";
  }
  os << "# status=" << (r.complete ? "complete" : "incomplete") << "\n";
}

inline nlohmann::json report_payload_json(const ExperimentReport& r) {
  nlohmann::json j;
  j["config"] = nlohmann::json::object();
  for (const auto& [k, v] : r.config_echo) j["config"][k] = v;
  j["sections"] = nlohmann::json::array();
  for (const ReportSection& sec : r.sections) {
    nlohmann::json js;
    js["name"] = sec.name;
    js["columns"] = sec.columns;
    js["rows"] = sec.rows;
    j["sections"].push_back(js);
  }
  j["verdicts"] = nlohmann::json::array();
  for (const Verdict& v : r.verdicts) {
    nlohmann::json jv;
    jv["name"] = v.name;
    jv["lhs"] = fmt17(v.lhs);
    jv["rhs"] = fmt17(v.rhs);
    jv["tolerance"] = fmt17(v.tolerance);
    jv["pass"] = v.pass;
    jv["class"] = v.verdict_class;
    jv["diagnostics"] = v.diagnostics;
    j["verdicts"].push_back(jv);
  }
  j["complete"] = r.complete;
  return j;
}

inline void write_report(const ExperimentReport& r,
                         const ExperimentConfig& cfg, std::ostream& os) {
  if (cfg.format == ExperimentConfig::Format::Json) {
    nlohmann::json j = report_payload_json(r);
    j["meta"] = {{"wall_ms", r.wall_ms}};
    os << j.dump(2) << "\n";
  } else {
    write_csv(r, os);
  }
}

// Checkpoint grid floor(exp(i^g)) capped at x_max, deduplicated, starting at
// 10 so the loglog-weighted statistics stay positive.
inline std::vector<double> checkpoint_grid(double grid_gamma, double x_max) {
  if (!(grid_gamma > 0 && grid_gamma < 1.0))
    throw std::invalid_argument("checkpoint_grid: grid_gamma outside (0,1)");
  std::vector<double> cp;
  const double log_max = std::log(x_max);
  for (std::uint64_t i = 1; i <= 100000000ull; ++i) {
    const double e = std::pow(static_cast<double>(i), grid_gamma);
    if (e > log_max) break;
    const double x = std::floor(std::exp(e));
    if (x < 10) continue;
    if (cp.empty() || x > cp.back()) cp.push_back(x);
  }
  if (cp.empty() || cp.back() < std::floor(x_max))
    cp.push_back(std::floor(x_max));
  return cp;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateSeedResult {
  std::vector<std::complex<double>> m_values;      // M_f at checkpoints
  std::vector<std::complex<double>> rough_values;  // P(n) > sqrt(x) restricted
  std::vector<std::uint64_t> sign_changes_per_decade;
};

// One streaming pass per seed: running M_f, the rough sum via the
// checkpoint-interval trick (n contributes while n <= x < P(n)^2), and sign
// changes of the real trace bucketed by decade of n.
inline SimulateSeedResult simulate_one_seed(const ExperimentConfig& cfg,
                                            std::uint64_t seed,
                                            const std::vector<double>& cp) {
  SimulateSeedResult res;
  const std::size_t m = cp.size();
  const std::uint64_t n_max = static_cast<std::uint64_t>(cfg.x_max);
  const int decades = static_cast<int>(std::floor(std::log10(cfg.x_max))) + 1;
  res.sign_changes_per_decade.assign(decades, 0);

  std::vector<KahanComplex> rough_diff(m + 1);
  std::vector<std::complex<double>> m_at(m);

  KahanComplex running;
  int prev_sign = 0;
  std::size_t next_cp = 0;

  SignOracle oracle(seed, cfg.model);
  auto handle = [&](std::uint64_t n, std::complex<double> v,
                    std::uint64_t largest) {
    const double nv = static_cast<double>(n);
    while (next_cp < m && cp[next_cp] < nv) {
      m_at[next_cp] = running.value();
      ++next_cp;
    }
    if (v == std::complex<double>{0.0, 0.0}) return;
    const std::complex<double> w = v / std::sqrt(nv);
    running.add(w);
    const double P = static_cast<double>(largest);
    const std::size_t i0 = detail::first_checkpoint_at_least(cp, nv);
    const std::size_t i1 = detail::first_checkpoint_at_least(cp, P * P);
    if (i0 < i1) {
      rough_diff[i0].add(w);
      rough_diff[i1].add(-w);
    }
    const double re = running.value().real();
    const int s = re > 0 ? 1 : (re < 0 ? -1 : 0);
    if (s != 0) {
      if (prev_sign != 0 && s != prev_sign) {
        const int d = static_cast<int>(std::floor(std::log10(nv)));
        if (d >= 0 && d < decades) ++res.sign_changes_per_decade[d];
      }
      prev_sign = s;
    }
  };

  if (cfg.model == Model::Steinhaus) {
    scan_steinhaus_values(oracle, 1, n_max + 1, handle);
  } else {
    scan_real_values(oracle, cfg.model == Model::Rademacher, 1, n_max + 1,
                     [&](std::uint64_t n, int v, std::uint64_t largest) {
                       handle(n, {static_cast<double>(v), 0.0}, largest);
                     });
  }
  while (next_cp < m) {
    m_at[next_cp] = running.value();
    ++next_cp;
  }

  res.m_values = std::move(m_at);
  res.rough_values.resize(m);
  KahanComplex acc;
  for (std::size_t i = 0; i < m; ++i) {
    acc.add(rough_diff[i].value());
    res.rough_values[i] = acc.value();
  }
  return res;
}

inline ExperimentReport cmd_simulate(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.config_echo = cfg.echo();
  const std::vector<std::uint64_t> seeds = cfg.seeds();
  if (cfg.x_max < 10 || cfg.x_max > 1e9)
    throw resource_error("simulate: x_max outside [10, 1e9]");
  const std::vector<double> cp = checkpoint_grid(cfg.grid_gamma, cfg.x_max);

  const auto results = parallel_map<SimulateSeedResult>(
      seeds.size(), cfg.effective_workers(),
      [&](std::size_t i) { return simulate_one_seed(cfg, seeds[i], cp); });

  ReportSection& series = rep.section(
      "series", {"seed", "model", "checkpoint", "real", "imag", "spec",
                 "stat61", "rough_real", "rough_imag", "stat21"});
  for (std::size_t si = 0; si < seeds.size(); ++si) {
    for (std::size_t ci = 0; ci < cp.size(); ++ci) {
      const double llx = std::log(std::log(cp[ci]));
      const std::complex<double> mv = results[si].m_values[ci];
      const std::complex<double> rv = results[si].rough_values[ci];
      series.rows.push_back(
          {std::to_string(seeds[si]), model_name(cfg.model), fmt17(cp[ci]),
           fmt17(mv.real()), fmt17(mv.imag()), "invsqrt:none",
           fmt17(std::abs(mv) / std::pow(llx, 61.0 / 80.0)), fmt17(rv.real()),
           fmt17(rv.imag()),
           fmt17(std::abs(rv) / std::pow(llx, 21.0 / 80.0))});
    }
  }

  ReportSection& quant = rep.section(
      "quantiles_stat61",
      {"checkpoint", "min", "p5", "p25", "p50", "p75", "p95", "max"});
  for (std::size_t ci = 0; ci < cp.size(); ++ci) {
    const double llx = std::log(std::log(cp[ci]));
    std::vector<double> stat(seeds.size());
    for (std::size_t si = 0; si < seeds.size(); ++si)
      stat[si] =
          std::abs(results[si].m_values[ci]) / std::pow(llx, 61.0 / 80.0);
    const Quantiles q = compute_quantiles(stat);
    quant.rows.push_back({fmt17(cp[ci]), fmt17(q.min), fmt17(q.p5),
                          fmt17(q.p25), fmt17(q.p50), fmt17(q.p75),
                          fmt17(q.p95), fmt17(q.max)});
  }

  // Qualitative Theorem probe: sign changes of the real trace per decade.
  ReportSection& sc = rep.section(
      "sign_changes", {"decade_lo", "avg_count", "note"});
  const int decades = static_cast<int>(std::floor(std::log10(cfg.x_max))) + 1;
  for (int d = 0; d < decades; ++d) {
    KahanSum total;
    for (const auto& r : results)
      total.add(static_cast<double>(r.sign_changes_per_decade[d]));
    sc.rows.push_back({fmt17(std::pow(10.0, d)),
                       fmt17(total.value() / static_cast<double>(seeds.size())),
                       "qualitative"});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// lower-probe
// ---------------------------------------------------------------------------

inline ExperimentReport cmd_lower_probe(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.config_echo = cfg.echo();
  const std::vector<std::uint64_t> seeds = cfg.seeds();

  std::vector<double> t_log;  // log T_k rungs that fit under x_max
  for (int k = 0;; ++k) {
    const double lk = std::pow(cfg.lambda, k);
    if (lk > 700.0) break;
    const double lt = std::exp(lk);
    if (lt > std::log(cfg.x_max)) break;
    t_log.push_back(lt);
  }
  if (t_log.size() < 2)
    throw resource_error(
        "lower-probe: ladder has fewer than two rungs under x_max; decrease "
        "lambda or raise x_max");

  const std::uint64_t n_max =
      static_cast<std::uint64_t>(std::floor(std::exp(t_log.back())));

  struct SeedMax {
    std::vector<double> window_max;
  };
  const auto results = parallel_map<SeedMax>(
      seeds.size(), cfg.effective_workers(), [&](std::size_t si) {
        SeedMax sm;
        sm.window_max.assign(t_log.size() - 1, 0.0);
        SignOracle oracle(seeds[si], cfg.model);
        KahanComplex running;
        auto handle = [&](std::uint64_t n, std::complex<double> v,
                          std::uint64_t) {
          if (v != std::complex<double>{0.0, 0.0})
            running.add(v / std::sqrt(static_cast<double>(n)));
          const double ln_n = std::log(static_cast<double>(n));
          for (std::size_t k = 0; k + 1 < t_log.size(); ++k)
            if (ln_n > t_log[k] && ln_n <= t_log[k + 1]) {
              sm.window_max[k] =
                  std::max(sm.window_max[k], std::abs(running.value()));
              break;
            }
        };
        if (cfg.model == Model::Steinhaus)
          scan_steinhaus_values(oracle, 1, n_max + 1, handle);
        else
          scan_real_values(oracle, cfg.model == Model::Rademacher, 1,
                           n_max + 1,
                           [&](std::uint64_t n, int v, std::uint64_t P) {
                             handle(n, {static_cast<double>(v), 0.0}, P);
                           });
        return sm;
      });

  ReportSection& sec = rep.section(
      "windows",
      {"seed", "window_k", "log_T_k", "window_max", "scaled_stat", "exceeds"});
  std::size_t exceed = 0, total = 0, skipped = 0;
  for (std::size_t si = 0; si < seeds.size(); ++si) {
    for (std::size_t k = 0; k + 1 < t_log.size(); ++k) {
      if (results[si].window_max[k] == 0.0) {
        ++skipped;  // no integer fell inside the window
        sec.rows.push_back({std::to_string(seeds[si]), std::to_string(k + 1),
                            fmt17(t_log[k + 1]), "0", "0", "skipped-empty"});
        continue;
      }
      const double stat =
          results[si].window_max[k] * std::sqrt(std::log(t_log[k + 1]));
      const bool hit = stat >= cfg.threshold_c;
      ++total;
      exceed += hit ? 1 : 0;
      sec.rows.push_back({std::to_string(seeds[si]), std::to_string(k + 1),
                          fmt17(t_log[k + 1]), fmt17(results[si].window_max[k]),
                          fmt17(stat), hit ? "1" : "0"});
    }
  }
  const double fraction =
      total ? static_cast<double>(exceed) / static_cast<double>(total) : 0.0;
  std::ostringstream diag;
  diag << "threshold=" << cfg.threshold_c << " windows=" << total
       << " skipped=" << skipped << " (qualitative)";
  rep.verdicts.push_back(make_verdict("lower_probe_fraction", fraction, 0.95,
                                      0.0, fraction >= 0.95, "band",
                                      diag.str()));
  if (!rep.verdicts.back().pass) rep.exit_code = 1;
  return rep;
}

// ---------------------------------------------------------------------------
// schedule
// ---------------------------------------------------------------------------

inline ExperimentReport cmd_schedule(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.config_echo = cfg.echo();
  ScheduleParams params = ScheduleParams::from_epsilon(cfg.gamma, 25.0 / cfg.K);
  const int ell = cfg.ell;
  if (ell <= params.K)
    throw std::invalid_argument(
        "schedule: ell <= K is degenerate (the bucket exponent 1 - K/ell is "
        "nonpositive and y_0 < e); choose ell > K");
  const int jstar = j_star(params, ell);
  const int J = J_for(params, ell, big_point(params, ell));
  rep.config_echo.emplace_back("j_star", std::to_string(jstar));
  rep.config_echo.emplace_back("J_at_X_ell", std::to_string(J));
  rep.config_echo.emplace_back("J_over_ellK",
                               fmt17(static_cast<double>(J) /
                                     std::pow(static_cast<double>(ell),
                                              params.K)));

  ReportSection& sec =
      rep.section("schedule", {"ell", "j", "llog_y", "j_star_flag"});
  for (int j = 0; j <= J; ++j)
    sec.rows.push_back({std::to_string(ell), std::to_string(j),
                        fmt17(y_point(params, ell, j).llog_value),
                        (j <= jstar) ? "1" : "0"});
  return rep;
}

// ---------------------------------------------------------------------------
// chaos-probe
// ---------------------------------------------------------------------------

inline ExperimentReport cmd_chaos_probe(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.config_echo = cfg.echo();
  const std::vector<double> ladder{1e2, 1e3, 1e4};

  ReportSection& sec = rep.section(
      "probe", {"y", "q", "estimate", "stderr", "reference", "ratio"});
  for (double y : ladder) {
    std::vector<double> draws = parallel_map<double>(
        cfg.chaos_samples, cfg.effective_workers(), [&](std::size_t i) {
          SignOracle o(cfg.base_seed + i, Model::Rademacher);
          return std::pow(chaos_window_integral(o, y, 0.0, 0), cfg.chaos_q);
        });
    const MeanStats st = mean_and_stderr(draws);
    const double envelope = std::pow(
        std::log(y) /
            (1.0 + (1.0 - cfg.chaos_q) * std::sqrt(std::log(std::log(y)))),
        cfg.chaos_q);
    const double ratio = st.mean / envelope;
    sec.rows.push_back({fmt17(y), fmt17(cfg.chaos_q), fmt17(st.mean),
                        fmt17(st.stderror), fmt17(envelope), fmt17(ratio)});
    const bool in_band =
        ratio >= pilot::kChaosBandLo && ratio <= pilot::kChaosBandHi;
    rep.verdicts.push_back(
        make_verdict("chaos_ratio_band_y=" + fmt17(y), ratio,
                     pilot::kChaosBandHi, 0.0, in_band, "band",
                     "band=[" + fmt17(pilot::kChaosBandLo) + "," +
                         fmt17(pilot::kChaosBandHi) + "]"));
    if (!in_band) rep.exit_code = 1;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// identity-check
// ---------------------------------------------------------------------------

inline ExperimentReport cmd_identity_check(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.config_echo = cfg.echo();
  const std::vector<std::uint64_t> seeds = cfg.seeds();
  std::vector<double> xs;
  for (double x = 1e3; x <= cfg.x_max + 0.5; x *= 10.0) xs.push_back(x);
  if (xs.empty()) xs.push_back(std::floor(cfg.x_max));

  struct Item {
    std::uint64_t seed = 0;
    double x = 0;
    IdentityCheck heur, heur2;
  };
  std::vector<std::pair<std::uint64_t, double>> work;
  for (std::uint64_t s : seeds)
    for (double x : xs) work.emplace_back(s, x);

  const auto items = parallel_map<Item>(
      work.size(), cfg.effective_workers(), [&](std::size_t i) {
        SignOracle o(work[i].first, Model::CompletelyMultiplicativeRademacher);
        Item it;
        it.seed = work[i].first;
        it.x = work[i].second;
        it.heur = identity_check_heur(o, it.x);
        it.heur2 = identity_check_heur2(o, it.x);
        return it;
      });

  ReportSection& sec = rep.section(
      "identities", {"seed", "x", "identity", "lhs", "rhs", "abs_gap", "pass"});
  bool all_pass = true;
  double worst = 0.0;
  for (const Item& it : items) {
    const bool p1 = it.heur.abs_gap <= 1e-9 * (1.0 + std::abs(it.heur.lhs));
    const bool p2 = it.heur2.abs_gap <= 1e-9 * (1.0 + std::abs(it.heur2.lhs));
    all_pass = all_pass && p1 && p2;
    worst = std::max({worst, it.heur.abs_gap / (1.0 + std::abs(it.heur.lhs)),
                      it.heur2.abs_gap / (1.0 + std::abs(it.heur2.lhs))});
    sec.rows.push_back({std::to_string(it.seed), fmt17(it.x), "heur",
                        fmt17(it.heur.lhs), fmt17(it.heur.rhs),
                        fmt17(it.heur.abs_gap), p1 ? "1" : "0"});
    sec.rows.push_back({std::to_string(it.seed), fmt17(it.x), "heur2",
                        fmt17(it.heur2.lhs), fmt17(it.heur2.rhs),
                        fmt17(it.heur2.abs_gap), p2 ? "1" : "0"});
  }
  rep.verdicts.push_back(make_verdict("identities_relative_gap", worst, 1e-9,
                                      1e-9, all_pass, "identity-exact", ""));
  if (!all_pass) rep.exit_code = 1;
  return rep;
}

}  // namespace rmflab

#include "rmflab/verify_suites.hpp"

namespace rmflab {

inline ExperimentReport run_command(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport rep;
  if (cfg.command == "simulate") rep = cmd_simulate(cfg);
  else if (cfg.command == "lower-probe") rep = cmd_lower_probe(cfg);
  else if (cfg.command == "verify") rep = cmd_verify(cfg);
  else if (cfg.command == "schedule") rep = cmd_schedule(cfg);
  else if (cfg.command == "chaos-probe") rep = cmd_chaos_probe(cfg);
  else if (cfg.command == "identity-check") rep = cmd_identity_check(cfg);
  else throw std::invalid_argument("unknown command: " + cfg.command);
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return rep;
}

}  // namespace rmflab

#endif  // RMFLAB_EXPERIMENT_HPP
