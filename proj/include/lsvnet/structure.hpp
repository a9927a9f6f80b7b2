#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "lsvnet/network.hpp"
#include "lsvnet/sampling.hpp"
#include "lsvnet/transforms.hpp"

namespace lsvnet {

// Degree scale t_n = log n / log log n; n >= 16 keeps log log n positive.
inline double degree_scale(std::size_t n) {
  if (n < 16) throw std::domain_error("n must be at least 16");
  double ln = std::log(static_cast<double>(n));
  return ln / std::log(ln);
}

// g(gamma) = ceil(gamma * t_n)
inline std::size_t degree_threshold(double gamma, std::size_t n) {
  return static_cast<std::size_t>(std::ceil(gamma * degree_scale(n)));
}

struct DegreeProfile {
  std::vector<std::size_t> in_degree, out_degree, degree;  // degree = max(in, out)
  std::size_t d1 = 0;                                      // max over vertices
};

// Exact in/out degree counts; a self-loop adds 1 to both sides of its vertex.
inline DegreeProfile degree_profile(const DirectedNetwork& net) {
  DegreeProfile p;
  p.in_degree.assign(net.n, 0);
  p.out_degree.assign(net.n, 0);
  p.degree.assign(net.n, 0);
  for (const auto& e : net.entries) {
    ++p.out_degree[e.row];
    ++p.in_degree[e.col];
  }
  for (std::size_t v = 0; v < net.n; ++v) {
    p.degree[v] = std::max(p.in_degree[v], p.out_degree[v]);
    p.d1 = std::max(p.d1, p.degree[v]);
  }
  return p;
}

inline DegreeProfile degree_profile(const UndirectedNetwork& net) {
  DegreeProfile p;
  p.in_degree.assign(net.n, 0);
  for (const auto& e : net.edges) {
    ++p.in_degree[e.u];
    ++p.in_degree[e.v];
  }
  p.out_degree = p.in_degree;
  p.degree = p.in_degree;
  for (std::size_t v = 0; v < net.n; ++v) p.d1 = std::max(p.d1, p.degree[v]);
  return p;
}

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

template <class EdgeEnd>
std::vector<ComponentStats> component_stats_impl(std::size_t n, const std::vector<EdgeEnd>& ends,
                                                 const std::vector<std::size_t>& degree,
                                                 const std::vector<std::size_t>& loop_vertex) {
  UnionFind uf(n);
  for (const auto& [a, b] : ends) uf.unite(a, b);
  std::vector<std::size_t> comp_id(n, kNoVertex);
  std::vector<ComponentStats> comps;
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t root = uf.find(v);
    if (comp_id[root] == kNoVertex) {
      comp_id[root] = comps.size();
      comps.push_back({});
    }
    std::size_t c = comp_id[root];
    comp_id[v] = c;
    ++comps[c].vertex_count;
    comps[c].max_degree = std::max(comps[c].max_degree, degree[v]);
  }
  for (const auto& [a, b] : ends) ++comps[comp_id[uf.find(a)]].edge_count;
  for (std::size_t v : loop_vertex) {
    std::size_t c = comp_id[uf.find(v)];
    ++comps[c].edge_count;
    ++comps[c].self_loop_count;
  }
  for (auto& c : comps)
    c.excess = static_cast<long long>(c.edge_count) - static_cast<long long>(c.vertex_count);
  return comps;
}

inline std::vector<ComponentStats> component_stats_undirected(const UndirectedNetwork& u) {
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  ends.reserve(u.edges.size());
  for (const auto& e : u.edges) ends.push_back({e.u, e.v});
  return component_stats_impl(u.n, ends, degree_profile(u).degree, {});
}

}  // namespace detail

// Weakly connected components with per-component stats; isolated vertices form
// singleton components. Directed input is analyzed through its symmetrized
// edge set, self-loops counted once as edges of their component.
inline std::vector<ComponentStats> components(const DirectedNetwork& net) {
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  std::vector<std::size_t> loops;
  for (const auto& e : net.entries) {
    if (e.row == e.col)
      loops.push_back(e.row);
    else
      ends.push_back({e.row, e.col});
  }
  return detail::component_stats_impl(net.n, ends, degree_profile(net).degree, loops);
}

inline std::vector<ComponentStats> components(const UndirectedNetwork& net) {
  return detail::component_stats_undirected(net);
}

struct DegreeLevelSets {
  std::vector<std::size_t> counts;  // |D_{i kappa}| for i = 0..m
  std::size_t top_count = 0;        // |D_{1+kappa}|
  std::size_t m = 0;                // m kappa < 1 <= (m+1) kappa
};

// Cardinalities of the degree level sets D_gamma = {v : d(v) >= g(gamma)} at
// gamma = i*kappa for i = 0..m plus gamma = 1+kappa.
inline DegreeLevelSets degree_level_sets(const UndirectedNetwork& u, double kappa, std::size_t n) {
  if (!(kappa > 0 && kappa < 1)) throw std::domain_error("kappa must be in (0, 1)");
  auto prof = degree_profile(u);
  DegreeLevelSets out;
  out.m = 0;
  while ((out.m + 1) * kappa < 1.0) ++out.m;
  auto count_at = [&](double gamma) {
    // level sets live on vertices of positive degree, so gamma = 0 does not
    // sweep in isolated vertices
    std::size_t g = std::max<std::size_t>(1, degree_threshold(gamma, n));
    std::size_t c = 0;
    for (std::size_t v = 0; v < u.n; ++v)
      if (prof.degree[v] >= g) ++c;
    return c;
  };
  for (std::size_t i = 0; i <= out.m; ++i) out.counts.push_back(count_at(i * kappa));
  out.top_count = count_at(1.0 + kappa);
  return out;
}

// Parameters for the event census; delta1..delta4 default to the combined
// high-probability event convention: delta1..3 = (1+delta)^2 - 1 in the light
// regime or (1+delta)^alpha - 1 in the heavy regime, delta4 = 1 + delta1.
struct CensusParams {
  double alpha = 1.0;
  double d = 2.0;
  double delta = 0.5;
  std::optional<double> epsilon;  // truncation; absent = no truncation
  double kappa = 0.25;
  std::optional<double> delta1, delta2, delta3, delta4;

  double rate_base() const {
    return alpha > 2 ? (1 + delta) * (1 + delta) - 1 : std::pow(1 + delta, alpha) - 1;
  }
  double d1_slack() const { return delta1 ? *delta1 : rate_base(); }
  double comp_slack() const { return delta2 ? *delta2 : rate_base(); }
  double excess_slack() const { return delta3 ? *delta3 : rate_base(); }
  double loop_slack() const { return delta4 ? *delta4 : 1 + rate_base(); }
};

// One flag per structural event together with the measured quantity behind it.
struct EventCensus {
  double t_n = 0.0;
  // D: maximum degree of the (truncated) symmetrized graph vs (1+delta1) t_n
  bool degree_ok = false;
  std::size_t d1 = 0;
  // C: maximum component size vs (1+delta2)/epsilon * t_n (epsilon = 1 when
  // no truncation is requested)
  bool component_ok = false;
  std::size_t max_component_size = 0;
  // E: maximum component excess vs delta3
  bool excess_ok = false;
  long long max_excess = 0;
  // P: level sets |D_{i kappa}| <= n^{1 - i kappa + kappa}
  bool level_sets_ok = false;
  DegreeLevelSets level_sets;
  // L: |D_{1+kappa}| <= (1+delta)^2 / kappa
  bool large_degree_ok = false;
  // R: max degree < g(1+kappa)
  bool max_degree_ok = false;
  // M: |E(X)| >= d n / 2 on the untruncated digraph
  bool edge_count_ok = false;
  std::size_t edge_count = 0;
  // F: per-component self-loop count < delta4
  bool self_loop_ok = false;
  std::size_t max_self_loops = 0;
  // W surrogate: greedy star decomposition at threshold g(kappa) leaves a
  // remainder of maximum degree below the threshold
  bool star_decomposition_ok = false;
};

// Evaluates the structural events on a sampled digraph. When epsilon is set
// the degree/component/level-set events are measured on the truncation
// X^(1) = entries with |w| > (epsilon log log n)^{1/alpha}; the edge-count
// event always uses the full digraph.
inline EventCensus event_census(const DirectedNetwork& x, const CensusParams& params) {
  const std::size_t n = x.n;
  EventCensus ev;
  ev.t_n = degree_scale(n);
  DirectedNetwork truncated = x;
  if (params.epsilon) {
    double tau = truncation_level(*params.epsilon, params.alpha, n);
    truncated = truncate_split(x, tau).first;
  }
  UndirectedNetwork sym = symmetrize(truncated);
  auto prof = degree_profile(sym);
  ev.d1 = prof.d1;
  ev.degree_ok = static_cast<double>(ev.d1) <= (1 + params.d1_slack()) * ev.t_n;

  auto comps = components(truncated);
  for (const auto& c : comps) {
    ev.max_component_size = std::max(ev.max_component_size, c.vertex_count);
    ev.max_self_loops = std::max(ev.max_self_loops, c.self_loop_count);
  }
  double eps_for_size = params.epsilon ? *params.epsilon : 1.0;
  ev.component_ok = static_cast<double>(ev.max_component_size) <=
                    (1 + params.comp_slack()) / eps_for_size * ev.t_n;
  // excess is measured on the symmetrized components, matching the event's
  // |E(C~)| - |V(C~)| formulation
  ev.max_excess = -1;
  for (const auto& c : components(sym)) ev.max_excess = std::max(ev.max_excess, c.excess);
  ev.excess_ok = static_cast<double>(ev.max_excess) <= params.excess_slack();

  ev.level_sets = degree_level_sets(sym, params.kappa, n);
  ev.level_sets_ok = true;
  for (std::size_t i = 0; i < ev.level_sets.counts.size(); ++i) {
    double bound = std::pow(static_cast<double>(n), 1.0 - static_cast<double>(i) * params.kappa +
                                                       params.kappa);
    if (static_cast<double>(ev.level_sets.counts[i]) > bound) ev.level_sets_ok = false;
  }
  ev.large_degree_ok = static_cast<double>(ev.level_sets.top_count) <=
                       (1 + params.delta) * (1 + params.delta) / params.kappa;
  ev.max_degree_ok = ev.d1 < degree_threshold(1.0 + params.kappa, n);
  ev.edge_count = x.edge_count();
  ev.edge_count_ok = static_cast<double>(ev.edge_count) >= params.d * static_cast<double>(n) / 2.0;
  ev.self_loop_ok = static_cast<double>(ev.max_self_loops) < params.loop_slack();
  ev.star_decomposition_ok =
      star_decompose(sym, std::max<std::size_t>(1, degree_threshold(params.kappa, n)))
          .remainder_below_threshold;
  return ev;
}

}  // namespace lsvnet
