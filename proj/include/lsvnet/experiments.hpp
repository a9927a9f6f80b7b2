#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lsvnet/network.hpp"
#include "lsvnet/rng.hpp"
#include "lsvnet/sampling.hpp"
#include "lsvnet/spectral.hpp"
#include "lsvnet/structure.hpp"
#include "lsvnet/theory.hpp"

namespace lsvnet {

inline constexpr const char* kBuildId = "lsvnet 1.0.0";

// Seeded Monte Carlo run description. An experiment is a pure function of its
// config, master seed included.
struct ExperimentConfig {
  double alpha = 1.0;
  double d = 2.0;
  std::vector<std::size_t> n_list;
  std::vector<std::size_t> trials;  // per n, aligned with n_list
  std::uint64_t master_seed = 1;
  double tol = 1e-6;
  std::size_t max_iter = 5000;
  double delta = 0.5;             // tail runs
  std::optional<double> epsilon;  // truncation, census runs
  double kappa = 0.25;            // census runs
  std::string out_dir = ".";

  void validate() const {
    if (n_list.empty()) throw std::domain_error("n_list must be nonempty");
    if (trials.size() != n_list.size())
      throw std::domain_error("trials must align with n_list");
    for (std::size_t t : trials)
      if (t < 1) throw std::domain_error("trials must be >= 1");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
      if (n_list[i] < 16) throw std::domain_error("all n must be >= 16");
      if (i > 0 && n_list[i] <= n_list[i - 1])
        throw std::domain_error("n_list must be strictly increasing");
    }
    if (!(alpha > 0)) throw std::domain_error("alpha must be positive");
    if (!(d >= 0)) throw std::domain_error("d must be nonnegative");
  }
};

inline void to_json(nlohmann::json& j, const ExperimentConfig& c) {
  j = nlohmann::json{{"alpha", c.alpha},   {"d", c.d},
                     {"n_list", c.n_list}, {"trials", c.trials},
                     {"master_seed", c.master_seed}, {"tol", c.tol},
                     {"max_iter", c.max_iter}, {"delta", c.delta},
                     {"kappa", c.kappa},   {"out_dir", c.out_dir}};
  if (c.epsilon) j["epsilon"] = *c.epsilon;
}

inline void from_json(const nlohmann::json& j, ExperimentConfig& c) {
  j.at("alpha").get_to(c.alpha);
  j.at("d").get_to(c.d);
  j.at("n_list").get_to(c.n_list);
  if (j.at("trials").is_number())
    c.trials.assign(c.n_list.size(), j.at("trials").get<std::size_t>());
  else
    j.at("trials").get_to(c.trials);
  if (j.contains("master_seed")) j.at("master_seed").get_to(c.master_seed);
  if (j.contains("tol")) j.at("tol").get_to(c.tol);
  if (j.contains("max_iter")) j.at("max_iter").get_to(c.max_iter);
  if (j.contains("delta")) j.at("delta").get_to(c.delta);
  if (j.contains("epsilon")) c.epsilon = j.at("epsilon").get<double>();
  if (j.contains("kappa")) j.at("kappa").get_to(c.kappa);
  if (j.contains("out_dir")) j.at("out_dir").get_to(c.out_dir);
}

namespace detail {

// Stream layout: one handle per (n index, trial), with fixed substreams for
// the graph draw, the weight draws, and the power-iteration start vector.
inline RngHandle trial_handle(const ExperimentConfig& cfg, std::size_t n_index,
                              std::size_t trial) {
  return RngHandle{cfg.master_seed,
                   (static_cast<std::uint64_t>(n_index) << 40) + trial};
}

struct TrialNorm {
  double value = 0.0;
  double max_entry = 0.0;
  bool converged = true;
};

inline TrialNorm sample_and_norm(const ExperimentConfig& cfg, std::size_t n_index,
                                 std::size_t trial) {
  RngHandle h = trial_handle(cfg, n_index, trial);
  std::size_t n = cfg.n_list[n_index];
  DirectedNetwork x = sample_digraph(n, cfg.d / static_cast<double>(n), h.substream(0));
  DirectedNetwork z = attach_weights(x, WeibullSpec{cfg.alpha, {}}, h.substream(1));
  TrialNorm out;
  for (const auto& e : z.entries) out.max_entry = std::max(out.max_entry, std::abs(e.weight));
  NormResult nr = spectral_norm_power(z, cfg.tol, cfg.max_iter, h.substream(2));
  out.value = nr.value;
  out.converged = nr.converged;
  return out;
}

}  // namespace detail

struct LLNTrialRow {
  std::size_t n = 0;
  std::size_t trial = 0;
  double norm = 0.0;
  double lambda = 0.0;
  double ratio = 0.0;
  bool converged = true;
};

struct LLNSizeStats {
  std::size_t n = 0;
  double mean = 0.0, stddev = 0.0, min = 0.0, max = 0.0;
  std::size_t converged_trials = 0, unconverged_trials = 0;
};

struct LLNReport {
  std::vector<LLNTrialRow> rows;
  std::vector<LLNSizeStats> per_n;
};

// Law-of-large-numbers run: per trial, sample X, attach weights, compute the
// norm with the power engine and normalize by the typical value.
inline LLNReport run_lln(const ExperimentConfig& cfg) {
  cfg.validate();
  LLNReport rep;
  for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
    std::size_t n = cfg.n_list[ni];
    double lambda = lambda_typical(n, cfg.alpha);
    LLNSizeStats stats;
    stats.n = n;
    double sum = 0.0, sumsq = 0.0;
    stats.min = std::numeric_limits<double>::infinity();
    stats.max = -stats.min;
    for (std::size_t t = 0; t < cfg.trials[ni]; ++t) {
      auto tn = detail::sample_and_norm(cfg, ni, t);
      double ratio = tn.value / lambda;
      rep.rows.push_back({n, t, tn.value, lambda, ratio, tn.converged});
      if (!tn.converged) {
        ++stats.unconverged_trials;
        continue;
      }
      ++stats.converged_trials;
      sum += ratio;
      sumsq += ratio * ratio;
      stats.min = std::min(stats.min, ratio);
      stats.max = std::max(stats.max, ratio);
    }
    if (stats.converged_trials > 0) {
      double c = static_cast<double>(stats.converged_trials);
      stats.mean = sum / c;
      stats.stddev = c > 1 ? std::sqrt(std::max(0.0, (sumsq - sum * sum / c) / (c - 1))) : 0.0;
    }
    if (stats.unconverged_trials * 100 > cfg.trials[ni])
      throw numeric_error("more than 1% of trials failed to converge");
    rep.per_n.push_back(stats);
  }
  return rep;
}

struct TailSizeStats {
  std::size_t n = 0;
  std::size_t trials = 0;  // converged trials entering p_hat
  std::size_t hits = 0;
  double p_hat = 0.0;
  double se = 0.0;  // binomial standard error
  std::size_t margin_trials = 0;  // |norm - threshold| < 10 tol lambda
  std::size_t unconverged_trials = 0;
};

struct TailReport {
  std::vector<TailSizeStats> per_n;
  bool slope_valid = false;
  double slope = 0.0;
  double slope_half_width = 0.0;  // 1.96 x standard error of the slope
  double predicted_exponent = 0.0;
};

namespace detail {

inline void fit_slope(TailReport& rep) {
  std::vector<double> xs, ys;
  for (const auto& s : rep.per_n)
    if (s.hits >= 5) {
      xs.push_back(std::log(static_cast<double>(s.n)));
      ys.push_back(std::log(s.p_hat));
    }
  if (xs.size() < 2) return;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= xs.size();
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  rep.slope = sxy / sxx;
  rep.slope_valid = true;
  if (xs.size() > 2) {
    double sse = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double r = ys[i] - my - rep.slope * (xs[i] - mx);
      sse += r * r;
    }
    rep.slope_half_width = 1.96 * std::sqrt(sse / (xs.size() - 2) / sxx);
  }
}

inline TailReport run_tail(const ExperimentConfig& cfg, TailSide side) {
  cfg.validate();
  if (side == TailSide::lower && !(cfg.delta > 0 && cfg.delta < 1))
    throw std::domain_error("lower tail requires 0 < delta < 1");
  TailReport rep;
  rep.predicted_exponent =
      cfg.delta > 0 ? -rate(RateQuery{cfg.alpha, cfg.delta}, side).value : 0.0;
  for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
    std::size_t n = cfg.n_list[ni];
    double lambda = lambda_typical(n, cfg.alpha);
    double thr = (side == TailSide::upper ? 1 + cfg.delta : 1 - cfg.delta) * lambda;
    double margin = 10.0 * cfg.tol * lambda;
    TailSizeStats stats;
    stats.n = n;
    for (std::size_t t = 0; t < cfg.trials[ni]; ++t) {
      // Cheap certificate first: the largest entry magnitude is a lower bound
      // on the norm, so an upper-tail hit beyond the margin band needs no
      // iteration.
      RngHandle h = detail::trial_handle(cfg, ni, t);
      DirectedNetwork x =
          sample_digraph(n, cfg.d / static_cast<double>(n), h.substream(0));
      DirectedNetwork z = attach_weights(x, WeibullSpec{cfg.alpha, {}}, h.substream(1));
      double max_entry = 0.0;
      for (const auto& e : z.entries) max_entry = std::max(max_entry, std::abs(e.weight));
      if (side == TailSide::upper && max_entry >= thr + margin) {
        ++stats.trials;
        ++stats.hits;
        continue;
      }
      NormResult nr = spectral_norm_power(z, cfg.tol, cfg.max_iter, h.substream(2));
      if (!nr.converged) {
        ++stats.unconverged_trials;
        continue;
      }
      ++stats.trials;
      if (std::abs(nr.value - thr) < margin) ++stats.margin_trials;
      bool hit = side == TailSide::upper ? nr.value >= thr : nr.value <= thr;
      if (hit) ++stats.hits;
    }
    if (stats.unconverged_trials * 100 > cfg.trials[ni])
      throw numeric_error("more than 1% of trials failed to converge");
    if (stats.trials > 0) {
      stats.p_hat = static_cast<double>(stats.hits) / static_cast<double>(stats.trials);
      stats.se = std::sqrt(stats.p_hat * (1 - stats.p_hat) / static_cast<double>(stats.trials));
    }
    rep.per_n.push_back(stats);
  }
  if (side == TailSide::upper) detail::fit_slope(rep);  // doubly exponential lower
                                                        // tail has no log-log slope
  return rep;
}

}  // namespace detail

inline TailReport run_upper_tail(const ExperimentConfig& cfg) {
  return detail::run_tail(cfg, TailSide::upper);
}

inline TailReport run_lower_tail(const ExperimentConfig& cfg) {
  return detail::run_tail(cfg, TailSide::lower);
}

struct CensusReport {
  // event name -> failure count, per n
  struct SizeCounts {
    std::size_t n = 0;
    std::size_t trials = 0;
    std::map<std::string, std::size_t> failures;
  };
  std::vector<SizeCounts> per_n;
};

// Empirical failure frequency of each structural event across seeded trials.
inline CensusReport run_structure_census(const ExperimentConfig& cfg) {
  cfg.validate();
  CensusReport rep;
  for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
    std::size_t n = cfg.n_list[ni];
    CensusReport::SizeCounts counts;
    counts.n = n;
    counts.trials = cfg.trials[ni];
    const char* names[] = {"D", "C", "E", "P", "L", "R", "M", "F", "W"};
    for (const char* nm : names) counts.failures[nm] = 0;
    CensusParams params;
    params.alpha = cfg.alpha;
    params.d = cfg.d;
    params.delta = cfg.delta;
    params.epsilon = cfg.epsilon;
    params.kappa = cfg.kappa;
    for (std::size_t t = 0; t < cfg.trials[ni]; ++t) {
      RngHandle h = detail::trial_handle(cfg, ni, t);
      DirectedNetwork x = sample_digraph(n, cfg.d / static_cast<double>(n), h.substream(0));
      EventCensus ev = event_census(x, params);
      if (!ev.degree_ok) ++counts.failures["D"];
      if (!ev.component_ok) ++counts.failures["C"];
      if (!ev.excess_ok) ++counts.failures["E"];
      if (!ev.level_sets_ok) ++counts.failures["P"];
      if (!ev.large_degree_ok) ++counts.failures["L"];
      if (!ev.max_degree_ok) ++counts.failures["R"];
      if (!ev.edge_count_ok) ++counts.failures["M"];
      if (!ev.self_loop_ok) ++counts.failures["F"];
      if (!ev.star_decomposition_ok) ++counts.failures["W"];
    }
    rep.per_n.push_back(counts);
  }
  return rep;
}

// --- report emission -------------------------------------------------------

namespace detail {

inline std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open for writing: " + path);
  return os;
}

inline std::string fmt(double v) { return lsvnet::detail::format_weight(v); }

}  // namespace detail

inline void emit_report(const LLNReport& rep, const std::string& path) {
  auto os = detail::open_out(path);
  os << "n,trial,norm,lambda,ratio,converged\n";
  for (const auto& r : rep.rows)
    os << r.n << "," << r.trial << "," << detail::fmt(r.norm) << "," << detail::fmt(r.lambda)
       << "," << detail::fmt(r.ratio) << "," << (r.converged ? 1 : 0) << "\n";
  if (!os) throw io_error("write failed: " + path);
}

inline void emit_report(const TailReport& rep, const std::string& path) {
  auto os = detail::open_out(path);
  os << "n,trials,hits,p_hat,se\n";
  for (const auto& s : rep.per_n)
    os << s.n << "," << s.trials << "," << s.hits << "," << detail::fmt(s.p_hat) << ","
       << detail::fmt(s.se) << "\n";
  if (!os) throw io_error("write failed: " + path);
}

inline void emit_report(const CensusReport& rep, const std::string& path) {
  auto os = detail::open_out(path);
  os << "n,trials,event,failures\n";
  for (const auto& s : rep.per_n)
    for (const auto& [name, count] : s.failures)
      os << s.n << "," << s.trials << "," << name << "," << count << "\n";
  if (!os) throw io_error("write failed: " + path);
}

// JSON manifest describing a finished run; re-running from the embedded
// config reproduces the CSV byte-for-byte.
inline void emit_manifest(const ExperimentConfig& cfg, const std::string& kind,
                          const std::string& csv_path, double wall_time_s,
                          const std::string& path) {
  nlohmann::json j;
  j["config"] = cfg;
  j["kind"] = kind;
  j["csv"] = csv_path;
  j["seed"] = cfg.master_seed;
  j["build"] = kBuildId;
  j["wall_time_s"] = wall_time_s;
  auto os = detail::open_out(path);
  os << j.dump(2) << "\n";
  if (!os) throw io_error("write failed: " + path);
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw io_error("cannot open: " + path);
  nlohmann::json j = nlohmann::json::parse(is, nullptr, true, true);
  // accept either a bare config or a manifest wrapping one
  if (j.contains("config")) j = j["config"];
  return j.get<ExperimentConfig>();
}

}  // namespace lsvnet
