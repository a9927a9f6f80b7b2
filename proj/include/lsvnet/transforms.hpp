#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lsvnet/network.hpp"

namespace lsvnet {

inline constexpr std::size_t kNoVertex = static_cast<std::size_t>(-1);

// Provenance of split-network vertices: for each original vertex, the compacted
// ids of its out-side (plus) and in-side (minus) copies, or kNoVertex when the
// copy was not retained.
struct SplitMap {
  struct Entry {
    std::size_t plus = kNoVertex;
    std::size_t minus = kNoVertex;
  };
  std::vector<Entry> vertices;  // indexed by original vertex id
};

// A_ij v A_ji off the diagonal, diagonal dropped; absent entries count as 0.
inline UndirectedNetwork symmetrize(const DirectedNetwork& a) {
  std::vector<UndirectedEdge> edges;
  edges.reserve(a.entries.size());
  for (const auto& e : a.entries) {
    if (e.row == e.col) continue;
    std::size_t u = std::min(e.row, e.col), v = std::max(e.row, e.col);
    edges.push_back({u, v, e.weight});
  }
  std::sort(edges.begin(), edges.end(), [](const UndirectedEdge& x, const UndirectedEdge& y) {
    return x.u != y.u ? x.u < y.u : x.v < y.v;
  });
  UndirectedNetwork out;
  out.n = a.n;
  for (const auto& e : edges) {
    if (!out.edges.empty() && out.edges.back().u == e.u && out.edges.back().v == e.v)
      out.edges.back().weight = std::max(out.edges.back().weight, e.weight);
    else
      out.edges.push_back(e);
  }
  return out;
}

// Splits every vertex v into an out-side copy v+ and an in-side copy v-, so
// each edge (i, j, w) becomes (i+, j-, w) and a self-loop becomes (v+, v-, w).
// Provisional ids are v+ = 2v, v- = 2v+1, then compacted to a contiguous range;
// isolated copies (and isolated original vertices) are dropped.
inline std::pair<DirectedNetwork, SplitMap> vertex_split(const DirectedNetwork& w) {
  std::vector<char> used(2 * w.n, 0);
  for (const auto& e : w.entries) {
    used[2 * e.row] = 1;
    used[2 * e.col + 1] = 1;
  }
  std::vector<std::size_t> compact(2 * w.n, kNoVertex);
  std::size_t next = 0;
  for (std::size_t k = 0; k < used.size(); ++k)
    if (used[k]) compact[k] = next++;
  DirectedNetwork split;
  split.n = next;
  split.entries.reserve(w.entries.size());
  for (const auto& e : w.entries)
    split.entries.push_back({compact[2 * e.row], compact[2 * e.col + 1], e.weight});
  split.canonicalize();
  SplitMap map;
  map.vertices.resize(w.n);
  for (std::size_t v = 0; v < w.n; ++v) {
    map.vertices[v].plus = compact[2 * v];
    map.vertices[v].minus = compact[2 * v + 1];
  }
  return {std::move(split), std::move(map)};
}

struct ReductionResult {
  UndirectedNetwork h;
  SplitMap split_map;
  std::vector<ComponentStats> components;
};

namespace detail {
// Forward declaration; defined in structure.hpp which includes this header.
std::vector<ComponentStats> component_stats_undirected(const UndirectedNetwork& u);
}  // namespace detail

// Clique reduction H = symmetrize(vertex_split(W)) for nonnegative weights:
// triangle-free, same edge multiset, norm at least that of W.
inline ReductionResult clique_reduce(const DirectedNetwork& w) {
  for (const auto& e : w.entries)
    if (e.weight < 0) throw std::domain_error("clique_reduce requires nonnegative weights");
  auto [split, map] = vertex_split(w);
  ReductionResult res;
  res.h = symmetrize(split);
  res.split_map = std::move(map);
  res.components = detail::component_stats_undirected(res.h);
  return res;
}

// True when the graph contains a triangle; exhaustive scan over edges and
// common neighbors.
inline bool has_triangle(const UndirectedNetwork& u) {
  std::vector<std::unordered_set<std::size_t>> adj(u.n);
  for (const auto& e : u.edges) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  for (const auto& e : u.edges) {
    const auto& small = adj[e.u].size() < adj[e.v].size() ? adj[e.u] : adj[e.v];
    const auto& large = adj[e.u].size() < adj[e.v].size() ? adj[e.v] : adj[e.u];
    for (std::size_t x : small)
      if (x != e.u && x != e.v && large.count(x)) return true;
  }
  return false;
}

struct StarDecomposition {
  std::vector<UndirectedNetwork> stars;  // vertex-disjoint; hubs had degree >= threshold
  UndirectedNetwork remainder;
  bool remainder_below_threshold = false;  // max remainder degree < threshold
};

// Greedy star decomposition: hubs are processed by descending degree in u
// (ties by vertex id) and claim their still-unclaimed neighbors as leaves.
// Every edge of u lands in exactly one star or in the remainder.
inline StarDecomposition star_decompose(const UndirectedNetwork& u, std::size_t threshold) {
  if (threshold < 1) throw std::domain_error("star threshold must be at least 1");
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(u.n);
  std::vector<std::size_t> degree(u.n, 0);
  for (const auto& e : u.edges) {
    adj[e.u].push_back({e.v, e.weight});
    adj[e.v].push_back({e.u, e.weight});
    ++degree[e.u];
    ++degree[e.v];
  }
  std::vector<std::size_t> order;
  for (std::size_t v = 0; v < u.n; ++v)
    if (degree[v] >= threshold) order.push_back(v);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return degree[a] != degree[b] ? degree[a] > degree[b] : a < b;
  });
  std::vector<std::size_t> claimed_by(u.n, kNoVertex);
  StarDecomposition out;
  for (std::size_t hub : order) {
    if (claimed_by[hub] != kNoVertex) continue;
    UndirectedNetwork star;
    star.n = u.n;
    claimed_by[hub] = hub;
    for (const auto& [nb, wt] : adj[hub]) {
      if (claimed_by[nb] != kNoVertex) continue;
      claimed_by[nb] = hub;
      star.edges.push_back({std::min(hub, nb), std::max(hub, nb), wt});
    }
    if (!star.edges.empty()) {
      star.canonicalize();
      out.stars.push_back(std::move(star));
    } else {
      claimed_by[hub] = kNoVertex;  // all neighbors taken; hub stays available as a leaf
    }
  }
  out.remainder.n = u.n;
  std::vector<std::size_t> rem_degree(u.n, 0);
  for (const auto& e : u.edges) {
    bool in_star = (claimed_by[e.u] == e.u && claimed_by[e.v] == e.u) ||
                   (claimed_by[e.v] == e.v && claimed_by[e.u] == e.v);
    if (!in_star) {
      out.remainder.edges.push_back(e);
      ++rem_degree[e.u];
      ++rem_degree[e.v];
    }
  }
  out.remainder.canonicalize();
  std::size_t max_rem = 0;
  for (std::size_t v = 0; v < u.n; ++v) max_rem = std::max(max_rem, rem_degree[v]);
  out.remainder_below_threshold = max_rem < threshold;
  return out;
}

}  // namespace lsvnet

#include "lsvnet/structure.hpp"
