#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "lsvnet/sampling.hpp"
#include "lsvnet/structure.hpp"
#include "oracles.hpp"

using namespace lsvnet;

TEST_CASE("degree scale and thresholds") {
  double tn = degree_scale(1000000);
  CHECK(tn == Catch::Approx(std::log(1e6) / std::log(std::log(1e6))).margin(1e-12));
  CHECK_THROWS_AS(degree_scale(8), std::domain_error);
  CHECK(degree_threshold(1.0, 1000000) == static_cast<std::size_t>(std::ceil(tn)));
  CHECK(degree_threshold(0.5, 1000000) == static_cast<std::size_t>(std::ceil(0.5 * tn)));
}

TEST_CASE("degree profile basics") {
  DirectedNetwork star;
  star.n = 6;
  for (std::size_t leaf = 1; leaf <= 5; ++leaf) star.entries.push_back({0, leaf, 1.0});
  auto p = degree_profile(star);
  CHECK(p.out_degree[0] == 5);
  CHECK(p.in_degree[0] == 0);
  CHECK(p.degree[0] == 5);
  CHECK(p.d1 == 5);

  DirectedNetwork empty;
  empty.n = 3;
  auto pe = degree_profile(empty);
  CHECK(pe.d1 == 0);
  for (std::size_t v = 0; v < 3; ++v) CHECK(pe.degree[v] == 0);
}

TEST_CASE("degree profile hand enumeration") {
  // 6 vertices: 0->1, 0->2, 1->2, 2->0, 3->3 (self-loop), 4->5
  DirectedNetwork g;
  g.n = 6;
  g.entries = {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}, {3, 3, 1.0}, {4, 5, 1.0}};
  g.canonicalize();
  auto p = degree_profile(g);
  CHECK(p.out_degree == std::vector<std::size_t>{2, 1, 1, 1, 1, 0});
  CHECK(p.in_degree == std::vector<std::size_t>{1, 1, 2, 1, 0, 1});
  CHECK(p.degree == std::vector<std::size_t>{2, 1, 2, 1, 1, 1});
  CHECK(p.d1 == 2);
  std::size_t in_total = 0, out_total = 0;
  for (std::size_t v = 0; v < 6; ++v) {
    in_total += p.in_degree[v];
    out_total += p.out_degree[v];
  }
  CHECK(in_total == g.edge_count());
  CHECK(out_total == g.edge_count());
}

TEST_CASE("components basics") {
  DirectedNetwork two_edges;
  two_edges.n = 4;
  two_edges.entries = {{0, 1, 1.0}, {2, 3, 1.0}};
  auto comps = components(two_edges);
  REQUIRE(comps.size() == 2);
  for (const auto& c : comps) {
    CHECK(c.vertex_count == 2);
    CHECK(c.excess == -1);
  }

  DirectedNetwork cycle;
  cycle.n = 4;
  cycle.entries = {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 0, 1.0}};
  auto cc = components(cycle);
  REQUIRE(cc.size() == 1);
  CHECK(cc[0].excess == 0);
  CHECK(cc[0].vertex_count == 4);
}

TEST_CASE("components match BFS oracle and conserve totals") {
  Rng r({70, 0});
  for (int rep = 0; rep < 50; ++rep) {
    auto net = oracles::random_network(40, 0.04, 0.5, 2.0, r);
    auto comps = components(net);
    std::vector<std::pair<std::size_t, std::size_t>> ends;
    for (const auto& e : net.entries)
      if (e.row != e.col) ends.push_back({e.row, e.col});
    CHECK(comps.size() == oracles::bfs_component_count(net.n, ends));
    std::size_t verts = 0, edges = 0, loops = 0;
    for (const auto& c : comps) {
      verts += c.vertex_count;
      edges += c.edge_count;
      loops += c.self_loop_count;
    }
    CHECK(verts == net.n);
    CHECK(edges == net.edge_count());
    CHECK(loops == net.self_loop_count());
  }
}

TEST_CASE("symmetrization of an indicator digraph shrinks the edge count") {
  auto x = sample_digraph(500, 0.01, {71, 0});
  auto xt = symmetrize(x);
  CHECK(xt.edges.size() <= x.edge_count());
  // X <= X~ + I entrywise
  std::set<std::pair<std::size_t, std::size_t>> sym;
  for (const auto& e : xt.edges) {
    sym.insert({e.u, e.v});
    sym.insert({e.v, e.u});
  }
  for (const auto& e : x.entries)
    REQUIRE((e.row == e.col || sym.count({e.row, e.col}) == 1));
}

TEST_CASE("degree level sets") {
  UndirectedNetwork empty;
  empty.n = 20;
  auto ls = degree_level_sets(empty, 0.25, 1000000);
  CHECK(ls.m == 3);
  for (std::size_t c : ls.counts) CHECK(c == 0);
  CHECK(ls.top_count == 0);

  // single hub of degree g(1) + 1
  std::size_t n = 1000000;
  std::size_t hub_deg = degree_threshold(1.0, n) + 1;
  UndirectedNetwork star;
  star.n = hub_deg + 1;
  for (std::size_t leaf = 1; leaf <= hub_deg; ++leaf) star.edges.push_back({0, leaf, 1.0});
  auto ls2 = degree_level_sets(star, 0.25, n);
  for (std::size_t i = 0; i <= ls2.m; ++i) {
    std::size_t g = degree_threshold(0.25 * static_cast<double>(i), n);
    std::size_t expect_hub = hub_deg >= g ? 1 : 0;
    std::size_t expect_leaves = (g <= 1) ? hub_deg : 0;
    CHECK(ls2.counts[i] == expect_hub + expect_leaves);
  }
  // non-increasing in i
  for (std::size_t i = 1; i <= ls2.m; ++i) CHECK(ls2.counts[i] <= ls2.counts[i - 1]);
  CHECK_THROWS_AS(degree_level_sets(empty, 0.0, n), std::domain_error);
  CHECK_THROWS_AS(degree_level_sets(empty, 1.0, n), std::domain_error);
}

TEST_CASE("level sets are non-increasing on random graphs") {
  Rng r({72, 0});
  for (int rep = 0; rep < 20; ++rep) {
    auto x = sample_digraph(300, 0.02, {72, static_cast<std::uint64_t>(rep + 1)});
    auto ls = degree_level_sets(symmetrize(x), 0.3, 300);
    for (std::size_t i = 1; i <= ls.m; ++i) REQUIRE(ls.counts[i] <= ls.counts[i - 1]);
  }
}

TEST_CASE("event census on an empty network holds vacuously") {
  DirectedNetwork empty;
  empty.n = 100;
  CensusParams params;
  params.alpha = 1.0;
  params.d = 0.0;
  params.delta = 0.5;
  auto ev = event_census(empty, params);
  CHECK(ev.degree_ok);
  CHECK(ev.component_ok);
  CHECK(ev.excess_ok);
  CHECK(ev.level_sets_ok);
  CHECK(ev.large_degree_ok);
  CHECK(ev.max_degree_ok);
  CHECK(ev.edge_count_ok);
  CHECK(ev.self_loop_ok);
  CHECK(ev.star_decomposition_ok);
}

TEST_CASE("event census flags a constructed degree violation") {
  std::size_t n = 100;
  double tn = degree_scale(n);
  auto hub_deg = static_cast<std::size_t>(std::ceil(2.0 * tn));
  DirectedNetwork star;
  star.n = n;
  for (std::size_t leaf = 1; leaf <= hub_deg; ++leaf) star.entries.push_back({0, leaf, 1.0});
  CensusParams params;
  params.alpha = 1.0;
  params.d = 0.0;
  params.delta = 0.5;
  params.delta1 = 0.5;
  auto ev = event_census(star, params);
  CHECK(ev.d1 == hub_deg);
  CHECK(!ev.degree_ok);
}

TEST_CASE("event census measured quantities are consistent") {
  auto x = sample_digraph(200, 0.015, {73, 0});
  CensusParams params;
  params.alpha = 1.0;
  params.d = 2.0;
  params.delta = 1.0;
  auto ev = event_census(x, params);
  CHECK(ev.edge_count == x.edge_count());
  CHECK(ev.d1 == degree_profile(symmetrize(x)).d1);
  std::size_t max_comp = 0;
  for (const auto& c : components(x)) max_comp = std::max(max_comp, c.vertex_count);
  CHECK(ev.max_component_size == max_comp);
  CHECK(ev.t_n == Catch::Approx(degree_scale(200)).margin(1e-15));
  // the census is a pure function
  auto ev2 = event_census(x, params);
  CHECK(ev.degree_ok == ev2.degree_ok);
  CHECK(ev.max_excess == ev2.max_excess);
}

TEST_CASE("event census with truncation measures the truncated graph") {
  auto x = sample_digraph(100, 0.05, {74, 0});
  auto z = attach_weights(x, WeibullSpec{1.0, {}}, {74, 1});
  CensusParams params;
  params.alpha = 1.0;
  params.d = 2.0;
  params.delta = 1.0;
  params.epsilon = 1.0;
  auto ev = event_census(z, params);
  double tau = truncation_level(1.0, 1.0, 100);
  auto truncated = truncate_split(z, tau).first;
  CHECK(ev.d1 == degree_profile(symmetrize(truncated)).d1);
  CHECK(ev.edge_count == z.edge_count());  // M always uses the full digraph
}
