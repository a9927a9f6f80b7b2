#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "lsvnet/spectral.hpp"
#include "lsvnet/structure.hpp"
#include "lsvnet/transforms.hpp"
#include "oracles.hpp"

using namespace lsvnet;

namespace {

// Fully both-sided directed triangle, all weights 1 (adjacency J - I).
DirectedNetwork both_sided_triangle() {
  DirectedNetwork w;
  w.n = 3;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) w.entries.push_back({i, j, 1.0});
  w.canonicalize();
  return w;
}

// The 10-vertex example network: vertices a..j as 0..9, ten single-direction
// edges, three both-sided pairs, and one self-loop (17 directed edges).
DirectedNetwork ten_vertex_example() {
  DirectedNetwork w;
  w.n = 10;
  auto add = [&](char from, char to) {
    w.entries.push_back({static_cast<std::size_t>(from - 'a'),
                         static_cast<std::size_t>(to - 'a'), 1.0});
  };
  add('b', 'c');
  add('c', 'a');
  add('c', 'h');
  add('h', 'g');
  add('h', 'i');
  add('j', 'i');
  add('h', 'd');
  add('e', 'j');
  add('e', 'f');
  add('j', 'd');
  add('c', 'd');
  add('d', 'c');
  add('d', 'i');
  add('i', 'd');
  add('c', 'i');
  add('i', 'c');
  add('d', 'd');
  w.canonicalize();
  return w;
}

std::size_t d1_directed(const DirectedNetwork& w) { return degree_profile(w).d1; }

}  // namespace

TEST_CASE("symmetrize basics") {
  DirectedNetwork a;
  a.n = 2;
  a.entries = {{0, 1, 3.0}, {1, 0, 5.0}};
  auto u = symmetrize(a);
  REQUIRE(u.edges.size() == 1);
  CHECK(u.edges[0] == UndirectedEdge{0, 1, 5.0});

  DirectedNetwork loop;
  loop.n = 3;
  loop.entries = {{2, 2, 7.0}};
  CHECK(symmetrize(loop).edges.empty());

  DirectedNetwork empty;
  empty.n = 4;
  CHECK(symmetrize(empty).edges.empty());
}

TEST_CASE("symmetrize of a lifted undirected network is the identity") {
  Rng r({55, 0});
  for (int rep = 0; rep < 30; ++rep) {
    auto net = oracles::random_network(8, 0.3, 0.1, 2.0, r);
    auto u = symmetrize(net);
    CHECK(symmetrize(as_directed(u)) == u);
  }
}

TEST_CASE("vertex_split single edge and self-loop") {
  DirectedNetwork one;
  one.n = 2;
  one.entries = {{0, 1, 2.5}};
  auto [split1, map1] = vertex_split(one);
  REQUIRE(split1.entries.size() == 1);
  CHECK(split1.n == 2);
  CHECK(split1.entries[0].weight == 2.5);
  CHECK(map1.vertices[0].plus != kNoVertex);
  CHECK(map1.vertices[0].minus == kNoVertex);
  CHECK(map1.vertices[1].minus != kNoVertex);

  DirectedNetwork loop;
  loop.n = 1;
  loop.entries = {{0, 0, 3.0}};
  auto [split2, map2] = vertex_split(loop);
  REQUIRE(split2.entries.size() == 1);
  CHECK(split2.n == 2);
  CHECK(split2.entries[0].row == map2.vertices[0].plus);
  CHECK(split2.entries[0].col == map2.vertices[0].minus);
}

TEST_CASE("vertex_split structural contract") {
  Rng r({55, 1});
  for (int rep = 0; rep < 100; ++rep) {
    auto w = oracles::random_network(8, 0.35, 0.1, 3.0, r);
    auto [split, map] = vertex_split(w);
    CHECK(split.entries.size() == w.entries.size());
    CHECK(split.n <= 2 * w.n);
    // v+ has indegree 0 and v- outdegree 0
    auto prof = degree_profile(split);
    for (std::size_t v = 0; v < w.n; ++v) {
      if (map.vertices[v].plus != kNoVertex) CHECK(prof.in_degree[map.vertices[v].plus] == 0);
      if (map.vertices[v].minus != kNoVertex) CHECK(prof.out_degree[map.vertices[v].minus] == 0);
    }
    // every split vertex maps back to exactly one original vertex
    std::set<std::size_t> seen;
    for (const auto& ent : map.vertices) {
      if (ent.plus != kNoVertex) CHECK(seen.insert(ent.plus).second);
      if (ent.minus != kNoVertex) CHECK(seen.insert(ent.minus).second);
    }
    CHECK(seen.size() == split.n);
    // norm preserved exactly
    double nw = spectral_norm_dense(w).value;
    double ns = spectral_norm_dense(split).value;
    CHECK(ns == Catch::Approx(nw).epsilon(1e-9).margin(1e-12));
  }
}

TEST_CASE("both-sided triangle reduces to a 6-vertex 6-edge triangle-free network") {
  auto w = both_sided_triangle();
  auto [split, map] = vertex_split(w);
  CHECK(split.n == 6);
  CHECK(split.entries.size() == 6);
  auto res = clique_reduce(w);
  CHECK(res.h.n == 6);
  CHECK(res.h.edges.size() == 6);
  CHECK(!has_triangle(res.h));
  double norm_w = spectral_norm_dense(w).value;
  CHECK(norm_w == Catch::Approx(2.0).margin(1e-10));
  CHECK(norm_w <= spectral_norm_dense(res.h).value + 1e-9);
}

TEST_CASE("ten-vertex example reduces without cliques") {
  auto w = ten_vertex_example();
  REQUIRE(w.entries.size() == 17);
  auto res = clique_reduce(w);
  CHECK(res.h.edges.size() == 17);
  CHECK(!has_triangle(res.h));
  CHECK(spectral_norm_dense(w).value <= spectral_norm_dense(res.h).value + 1e-9);
}

TEST_CASE("single edge reduces to itself") {
  DirectedNetwork one;
  one.n = 2;
  one.entries = {{0, 1, 2.0}};
  auto res = clique_reduce(one);
  REQUIRE(res.h.edges.size() == 1);
  CHECK(res.h.edges[0].weight == 2.0);
  CHECK(spectral_norm_dense(one).value ==
        Catch::Approx(spectral_norm_dense(res.h).value).margin(1e-12));
}

TEST_CASE("clique_reduce rejects negative weights") {
  DirectedNetwork bad;
  bad.n = 2;
  bad.entries = {{0, 1, -1.0}};
  CHECK_THROWS_AS(clique_reduce(bad), std::domain_error);
}

TEST_CASE("clique reduction properties on random nonnegative networks") {
  Rng r({56, 0});
  for (int rep = 0; rep < 100; ++rep) {
    std::size_t n = 2 + static_cast<std::size_t>(r.next_below(9));
    auto w = oracles::random_network(n, 0.4, 0.05, 4.0, r);
    auto res = clique_reduce(w);
    // (1) edge count preserved, (4) weights are a rearrangement
    CHECK(res.h.edges.size() == w.entries.size());
    CHECK(oracles::sorted_weights(res.h) == oracles::sorted_weights(w));
    // (2) vertex bound
    CHECK(res.h.n <= 2 * w.n);
    // (3) degree bound
    CHECK(degree_profile(res.h).d1 <= d1_directed(w));
    // (4) triangle-free
    CHECK(!has_triangle(res.h));
    // (5) per-component excess bound
    CHECK(oracles::excess_property_holds(w, res.h, res.split_map));
    // (6) norm inequality
    CHECK(spectral_norm_dense(w).value <= spectral_norm_dense(res.h).value + 1e-9);
  }
}

TEST_CASE("nullity monotonicity: subgraph excess never exceeds host excess") {
  Rng r({56, 1});
  for (int rep = 0; rep < 100; ++rep) {
    // host: connected random undirected graph built from a random tree + extras
    std::size_t n = 4 + static_cast<std::size_t>(r.next_below(8));
    UndirectedNetwork u;
    u.n = n;
    std::set<std::pair<std::size_t, std::size_t>> used;
    for (std::size_t v = 1; v < n; ++v) {
      std::size_t parent = r.next_below(v);
      used.insert({parent, v});
    }
    for (int extra = 0; extra < 4; ++extra) {
      std::size_t a = r.next_below(n), b = r.next_below(n);
      if (a == b) continue;
      used.insert({std::min(a, b), std::max(a, b)});
    }
    for (auto [a, b] : used) u.edges.push_back({a, b, 1.0});
    u.canonicalize();
    auto host = components(u);
    REQUIRE(host.size() == 1);
    // subgraph: random connected edge-subset grown from a random start edge
    std::vector<UndirectedEdge> sub;
    std::set<std::size_t> verts;
    auto start = u.edges[r.next_below(u.edges.size())];
    sub.push_back(start);
    verts.insert(start.u);
    verts.insert(start.v);
    for (int grow = 0; grow < 6; ++grow)
      for (const auto& e : u.edges)
        if ((verts.count(e.u) || verts.count(e.v)) && r.next_sign() &&
            std::find(sub.begin(), sub.end(), e) == sub.end()) {
          sub.push_back(e);
          verts.insert(e.u);
          verts.insert(e.v);
        }
    long long sub_excess = static_cast<long long>(sub.size()) - static_cast<long long>(verts.size());
    CHECK(sub_excess <= host[0].excess);
  }
}

TEST_CASE("star_decompose exact star and low-degree path") {
  UndirectedNetwork star;
  star.n = 6;
  for (std::size_t leaf = 1; leaf <= 5; ++leaf) star.edges.push_back({0, leaf, 1.0});
  star.canonicalize();
  auto dec = star_decompose(star, 3);
  REQUIRE(dec.stars.size() == 1);
  CHECK(dec.stars[0].edges.size() == 5);
  CHECK(dec.remainder.edges.empty());
  CHECK(dec.remainder_below_threshold);

  UndirectedNetwork path;
  path.n = 4;
  path.edges = {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}};
  auto dec2 = star_decompose(path, 3);
  CHECK(dec2.stars.empty());
  CHECK(dec2.remainder == path);
  CHECK(dec2.remainder_below_threshold);
}

TEST_CASE("star_decompose partitions edges and keeps stars vertex-disjoint") {
  Rng r({57, 0});
  for (int rep = 0; rep < 50; ++rep) {
    auto w = oracles::random_network(20, 0.12, 0.1, 2.0, r);
    auto u = symmetrize(w);
    auto dec = star_decompose(u, 3);
    std::vector<UndirectedEdge> all;
    std::set<std::size_t> star_verts;
    for (const auto& s : dec.stars) {
      REQUIRE(!s.edges.empty());
      std::set<std::size_t> mine;
      for (const auto& e : s.edges) {
        all.push_back(e);
        mine.insert(e.u);
        mine.insert(e.v);
      }
      for (std::size_t v : mine) REQUIRE(star_verts.insert(v).second);
    }
    for (const auto& e : dec.remainder.edges) all.push_back(e);
    std::sort(all.begin(), all.end(), [](const UndirectedEdge& a, const UndirectedEdge& b) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    CHECK(all == u.edges);
    // hubs had degree >= threshold in u
    auto prof = degree_profile(u);
    for (const auto& s : dec.stars) {
      // the hub is the vertex shared by all edges of the star
      std::size_t hub = s.edges.size() == 1
                            ? s.edges[0].u
                            : (s.edges[0].u == s.edges[1].u || s.edges[0].u == s.edges[1].v
                                   ? s.edges[0].u
                                   : s.edges[0].v);
      bool hub_ok = prof.degree[hub] >= 3;
      if (s.edges.size() == 1 && !hub_ok) hub_ok = prof.degree[s.edges[0].v] >= 3;
      CHECK(hub_ok);
    }
  }
}

TEST_CASE("star threshold must be positive") {
  UndirectedNetwork u;
  u.n = 2;
  u.edges = {{0, 1, 1.0}};
  CHECK_THROWS_AS(star_decompose(u, 0), std::domain_error);
}
