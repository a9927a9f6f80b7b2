// Command-line front end: every subcommand is a thin adapter over the library
// operations, emitting JSON on stdout for single results and CSV files for
// bulk trial data.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lsvnet/experiments.hpp"
#include "lsvnet/network.hpp"
#include "lsvnet/rng.hpp"
#include "lsvnet/sampling.hpp"
#include "lsvnet/spectral.hpp"
#include "lsvnet/structure.hpp"
#include "lsvnet/theory.hpp"
#include "lsvnet/transforms.hpp"

namespace {

using nlohmann::json;

std::string default_out_dir() {
  const char* env = std::getenv("LSVNET_OUT_DIR");
  return env && *env ? env : ".";
}

const char* engine_name(lsvnet::NormEngine e) {
  switch (e) {
    case lsvnet::NormEngine::dense: return "dense";
    case lsvnet::NormEngine::power: return "power";
    case lsvnet::NormEngine::star: return "star";
  }
  return "?";
}

json norm_json(const lsvnet::NormResult& r) {
  return json{{"value", r.value},
              {"engine", engine_name(r.engine)},
              {"iterations", r.iterations},
              {"residual", r.residual},
              {"converged", r.converged}};
}

struct SampleArgs {
  std::size_t n = 0;
  double d = 0.0;
  std::optional<double> alpha;
  std::optional<double> threshold;
  std::uint64_t seed = 1;
  std::string out;
};

int run_sample(const SampleArgs& a) {
  double p = a.d / static_cast<double>(a.n);
  lsvnet::RngHandle h{a.seed, 0};
  lsvnet::DirectedNetwork net = lsvnet::sample_digraph(a.n, p, h.substream(0));
  if (a.alpha) {
    lsvnet::WeibullSpec spec{*a.alpha, a.threshold};
    net = lsvnet::attach_weights(net, spec, h.substream(1));
  }
  lsvnet::save_network(a.out, net);
  std::cout << json{{"n", net.n}, {"edges", net.edge_count()}, {"out", a.out}}.dump() << "\n";
  return 0;
}

struct ReduceArgs {
  std::string in, out, split_map;
};

int run_reduce(const ReduceArgs& a) {
  lsvnet::DirectedNetwork w = lsvnet::load_directed(a.in);
  lsvnet::ReductionResult res = lsvnet::clique_reduce(w);
  lsvnet::save_network(a.out, res.h);
  if (!a.split_map.empty()) {
    std::ofstream os(a.split_map);
    if (!os) throw lsvnet::io_error("cannot open for writing: " + a.split_map);
    auto id = [](std::size_t v) {
      return v == lsvnet::kNoVertex ? std::string("-") : std::to_string(v);
    };
    for (std::size_t v = 0; v < res.split_map.vertices.size(); ++v)
      os << v << "," << id(res.split_map.vertices[v].plus) << ","
         << id(res.split_map.vertices[v].minus) << "\n";
    if (!os) throw lsvnet::io_error("write failed: " + a.split_map);
  }
  std::cout << json{{"vertices", res.h.n},
                    {"edges", res.h.edges.size()},
                    {"components", res.components.size()},
                    {"out", a.out}}
                   .dump()
            << "\n";
  return 0;
}

struct NormArgs {
  std::string in;
  std::string engine = "auto";
  double tol = 1e-10;
  std::size_t max_iter = 100000;
  std::uint64_t seed = 1;
};

int run_norm(const NormArgs& a) {
  lsvnet::NormResult res;
  auto compute = [&](const auto& net) {
    bool dense = a.engine == "dense" ||
                 (a.engine == "auto" && net.n <= 200);
    if (dense)
      res = lsvnet::spectral_norm_dense(net);
    else
      res = lsvnet::spectral_norm_power(net, a.tol, a.max_iter, {a.seed, 0});
  };
  if (lsvnet::file_is_directed(a.in))
    compute(lsvnet::load_directed(a.in));
  else
    compute(lsvnet::load_undirected(a.in));
  std::cout << norm_json(res).dump() << "\n";
  return 0;
}

struct StructureArgs {
  std::string in;
  lsvnet::CensusParams params;
  std::optional<double> epsilon;
};

int run_structure(const StructureArgs& a) {
  lsvnet::DirectedNetwork x = lsvnet::load_directed(a.in);
  lsvnet::CensusParams params = a.params;
  params.epsilon = a.epsilon;
  lsvnet::EventCensus ev = lsvnet::event_census(x, params);
  json j{{"t_n", ev.t_n},
         {"degree_ok", ev.degree_ok},
         {"d1", ev.d1},
         {"component_ok", ev.component_ok},
         {"max_component_size", ev.max_component_size},
         {"excess_ok", ev.excess_ok},
         {"max_excess", ev.max_excess},
         {"level_sets_ok", ev.level_sets_ok},
         {"level_set_counts", ev.level_sets.counts},
         {"level_set_top_count", ev.level_sets.top_count},
         {"large_degree_ok", ev.large_degree_ok},
         {"max_degree_ok", ev.max_degree_ok},
         {"edge_count_ok", ev.edge_count_ok},
         {"edge_count", ev.edge_count},
         {"self_loop_ok", ev.self_loop_ok},
         {"max_self_loops", ev.max_self_loops},
         {"star_decomposition_ok", ev.star_decomposition_ok}};
  std::cout << j.dump() << "\n";
  return 0;
}

struct TheoryArgs {
  std::string op;
  double alpha = 1.0;
  double delta = 0.5;
  std::size_t n = 16;
  std::string tail = "upper";
  double theta = 1.0;
  std::size_t k = 2;
  std::size_t k_max = 0;
  double rho = 0.0;
  double x = 0.0;
  double p = 0.5;
  double q = 0.5;
  std::size_t m = 10;
};

int run_theory(const TheoryArgs& a) {
  json j;
  if (a.op == "lambda") {
    j = json{{"value", lsvnet::lambda_typical(a.n, a.alpha)},
             {"regime", lsvnet::regime_of(a.alpha) == lsvnet::Regime::light ? "light" : "heavy"}};
  } else if (a.op == "rate") {
    auto side = a.tail == "lower" ? lsvnet::TailSide::lower : lsvnet::TailSide::upper;
    auto r = lsvnet::rate({a.alpha, a.delta, a.n, {}, {}}, side);
    j = json{{"value", r.value},
             {"regime", r.regime == lsvnet::Regime::light ? "light" : "heavy"},
             {"tail", a.tail}};
  } else if (a.op == "phi") {
    auto r = lsvnet::phi(a.theta, a.k);
    j = json{{"value", r.value},
             {"candidate_family", r.candidate_family},
             {"local_search", r.local_search},
             {"disagreement", r.disagreement}};
  } else if (a.op == "psi") {
    if (a.k_max >= 2) {
      auto [kstar, val] = lsvnet::psi_min(a.alpha, a.delta, a.k_max);
      j = json{{"minimizer", kstar}, {"value", val}};
    } else {
      j = json{{"value", lsvnet::psi(a.alpha, a.delta, a.k)}};
    }
  } else if (a.op == "f") {
    if (a.x > 0) {
      j = json{{"value", lsvnet::f_rate(a.alpha, a.rho, a.x)}};
    } else {
      auto r = lsvnet::f_max(a.alpha, a.rho);
      j = json{{"maximizer", r.maximizer},
               {"max_value", r.max_value},
               {"numeric_maximizer", r.numeric_maximizer},
               {"numeric_value", r.numeric_value}};
    }
  } else if (a.op == "entropy") {
    j = json{{"value", lsvnet::relative_entropy(a.p, a.q)}};
  } else if (a.op == "binom") {
    auto [lo, hi] = lsvnet::binomial_tail_bounds(a.m, a.q, a.theta);
    auto side = a.theta > a.q ? lsvnet::TailSide::upper : lsvnet::TailSide::lower;
    j = json{{"lower", lo},
             {"upper", hi},
             {"exact", lsvnet::binomial_exact_tail(a.m, a.q, a.theta, side)}};
  } else {
    throw std::domain_error("unknown theory op: " + a.op);
  }
  std::cout << j.dump() << "\n";
  return 0;
}

struct ExperimentArgs {
  std::string kind;
  std::string config_path;
  lsvnet::ExperimentConfig cfg;
  bool n_list_given = false;
};

int run_experiment(ExperimentArgs& a) {
  lsvnet::ExperimentConfig cfg = a.cfg;
  if (!a.config_path.empty()) cfg = lsvnet::load_config(a.config_path);
  if (cfg.trials.size() == 1 && cfg.n_list.size() > 1)
    cfg.trials.assign(cfg.n_list.size(), cfg.trials[0]);
  cfg.validate();
  std::string stem = cfg.out_dir + "/" + a.kind;
  std::string csv = stem + ".csv";
  auto t0 = std::chrono::steady_clock::now();
  if (a.kind == "lln") {
    lsvnet::emit_report(lsvnet::run_lln(cfg), csv);
  } else if (a.kind == "upper-tail") {
    lsvnet::emit_report(lsvnet::run_upper_tail(cfg), csv);
  } else if (a.kind == "lower-tail") {
    lsvnet::emit_report(lsvnet::run_lower_tail(cfg), csv);
  } else if (a.kind == "census") {
    lsvnet::emit_report(lsvnet::run_structure_census(cfg), csv);
  } else {
    throw std::domain_error("unknown experiment kind: " + a.kind);
  }
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::string manifest = stem + ".manifest.json";
  lsvnet::emit_manifest(cfg, a.kind, csv, wall, manifest);
  std::cout << json{{"csv", csv}, {"manifest", manifest}, {"wall_time_s", wall}}.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse random network norms: sampling, transforms, spectra, theory"};
  app.set_version_flag("--version", std::string(lsvnet::kBuildId) + " (" + __DATE__ + ")");
  app.require_subcommand(1);

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "sample an Erdos-Renyi digraph, optionally weighted");
  sample->add_option("--n", sa.n, "vertex count")->required();
  sample->add_option("--d", sa.d, "mean degree; edge probability is d/n")->required();
  double sample_alpha = 0, sample_thresh = 0;
  auto* oa = sample->add_option("--alpha", sample_alpha, "Weibull shape; omit for indicator weights");
  auto* ot = sample->add_option("--threshold", sample_thresh, "condition weights on |W| > threshold");
  sample->add_option("--seed", sa.seed, "master seed");
  sample->add_option("--out", sa.out, "output network file")->required();

  ReduceArgs ra;
  auto* reduce = app.add_subcommand("reduce", "clique reduction of a directed network");
  reduce->add_option("--in", ra.in, "input directed network file")->required();
  reduce->add_option("--out", ra.out, "output undirected network file")->required();
  reduce->add_option("--emit-split-map", ra.split_map, "write split map as orig,plus,minus lines");

  NormArgs na;
  auto* norm = app.add_subcommand("norm", "largest singular value of a network");
  norm->add_option("--in", na.in, "input network file")->required();
  norm->add_option("--engine", na.engine, "dense, power, or auto")
      ->check(CLI::IsMember({"dense", "power", "auto"}));
  norm->add_option("--tol", na.tol, "power-iteration relative tolerance");
  norm->add_option("--max-iter", na.max_iter, "power-iteration cap");
  norm->add_option("--seed", na.seed, "start-vector seed");

  StructureArgs ta;
  double struct_eps = 0;
  auto* structure = app.add_subcommand("structure", "structural event census of a directed network");
  structure->add_option("--in", ta.in, "input directed network file")->required();
  structure->add_option("--d", ta.params.d, "mean degree");
  structure->add_option("--alpha", ta.params.alpha, "Weibull shape");
  structure->add_option("--delta", ta.params.delta, "deviation parameter");
  auto* oe = structure->add_option("--epsilon", struct_eps, "truncation parameter");
  structure->add_option("--kappa", ta.params.kappa, "level-set discretization");

  TheoryArgs ya;
  auto* theory = app.add_subcommand("theory", "closed-form quantities");
  theory->add_option("--op", ya.op, "lambda, rate, phi, psi, f, entropy, or binom")
      ->required()
      ->check(CLI::IsMember({"lambda", "rate", "phi", "psi", "f", "entropy", "binom"}));
  theory->add_option("--alpha", ya.alpha);
  theory->add_option("--delta", ya.delta);
  theory->add_option("--n", ya.n);
  theory->add_option("--tail", ya.tail)->check(CLI::IsMember({"upper", "lower"}));
  theory->add_option("--theta", ya.theta);
  theory->add_option("--k", ya.k);
  theory->add_option("--k-max", ya.k_max);
  theory->add_option("--rho", ya.rho);
  theory->add_option("--x", ya.x);
  theory->add_option("--p", ya.p);
  theory->add_option("--q", ya.q);
  theory->add_option("--m", ya.m);

  ExperimentArgs ea;
  ea.cfg.out_dir = default_out_dir();
  auto* experiment = app.add_subcommand("experiment", "seeded Monte Carlo runs");
  experiment->add_option("kind", ea.kind, "lln, upper-tail, lower-tail, or census")
      ->required()
      ->check(CLI::IsMember({"lln", "upper-tail", "lower-tail", "census"}));
  experiment->add_option("--config", ea.config_path, "JSON config or manifest to run from");
  experiment->add_option("--alpha", ea.cfg.alpha);
  experiment->add_option("--d", ea.cfg.d);
  experiment->add_option("--delta", ea.cfg.delta);
  experiment->add_option("--n-list", ea.cfg.n_list, "network sizes");
  experiment->add_option("--trials", ea.cfg.trials, "trials per size (one value broadcasts)");
  experiment->add_option("--seed", ea.cfg.master_seed);
  experiment->add_option("--tol", ea.cfg.tol);
  experiment->add_option("--max-iter", ea.cfg.max_iter);
  double exp_eps = 0;
  auto* oee = experiment->add_option("--epsilon", exp_eps, "truncation parameter (census)");
  experiment->add_option("--kappa", ea.cfg.kappa);
  experiment->add_option("--out-dir", ea.cfg.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*sample) {
      if (*oa) sa.alpha = sample_alpha;
      if (*ot) sa.threshold = sample_thresh;
      if (sa.n == 0) throw std::domain_error("n must be positive");
      if (sa.d < 0 || sa.d > static_cast<double>(sa.n))
        throw std::domain_error("d must give an edge probability in [0, 1]");
      return run_sample(sa);
    }
    if (*reduce) return run_reduce(ra);
    if (*norm) return run_norm(na);
    if (*structure) {
      if (*oe) ta.epsilon = struct_eps;
      return run_structure(ta);
    }
    if (*theory) return run_theory(ya);
    if (*experiment) {
      if (*oee) ea.cfg.epsilon = exp_eps;
      return run_experiment(ea);
    }
  } catch (const lsvnet::io_error& e) {
    std::cerr << "io-error: " << e.what() << "\n";
    return 2;
  } catch (const lsvnet::numeric_error& e) {
    std::cerr << "numeric-error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "domain-error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "domain-error: " << e.what() << "\n";
    return 1;
  } catch (const std::length_error& e) {
    std::cerr << "domain-error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
