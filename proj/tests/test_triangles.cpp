#include <doctest.h>

#include <set>
#include <sstream>

#include "tsr/triangles.hpp"

using namespace tsr;

namespace {

Graph complete(std::size_t n) {
  std::vector<std::pair<u32, u32>> e;
  for (u32 u = 0; u < n; ++u)
    for (u32 v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

Graph random_graph(Rng& rng, std::size_t n, double p) {
  std::vector<std::pair<u32, u32>> e;
  for (u32 u = 0; u < n; ++u)
    for (u32 v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

}  // namespace

TEST_CASE("graph construction") {
  const auto g = Graph::from_edges(4, {{0, 1}, {1, 0}, {2, 3}});
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(1, 0));
  CHECK_FALSE(g.has_edge(1, 2));
  CHECK_THROWS_AS(Graph::from_edges(2, {{1, 1}}), ParameterError);
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 2}}), ParameterError);
}

TEST_CASE("small triangle counts") {
  CHECK(enum_triangles_brute(complete(3)) == std::vector<Triangle>{{0, 1, 2}});
  CHECK(enum_triangles_brute(Graph::from_edges(3, {{0, 1}, {1, 2}})).empty());
  CHECK(enum_triangles_brute(complete(4)).size() == 4);
  CHECK(enum_triangles_cn(complete(4)) == enum_triangles_brute(complete(4)));
  std::vector<std::pair<u32, u32>> bip;
  for (u32 u = 0; u < 5; ++u)
    for (u32 v = 5; v < 9; ++v) bip.emplace_back(u, v);
  CHECK(enum_triangles_cn(Graph::from_edges(9, bip)).empty());
}

TEST_CASE("degeneracy") {
  CHECK(degeneracy_order(complete(4)).degeneracy == 3);
  CHECK(degeneracy_order(Graph::from_edges(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}})).degeneracy == 1);
  CHECK(degeneracy_order(Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}})).degeneracy == 2);
  const auto d = degeneracy_order(Graph::from_edges(3, {{0, 1}, {1, 2}}));
  CHECK(d.order == std::vector<u32>{0, 1, 2});
  for (u32 v = 0; v < 3; ++v) CHECK(d.order[d.rank[v]] == v);
}

TEST_CASE("enumerators agree on random graphs within the work bound") {
  Rng rng(1);
  for (int t = 0; t < 150; ++t) {
    const auto g = random_graph(rng, 1 + rng.below(80), 0.05 + 0.45 * rng.uniform());
    OpCounter w;
    REQUIRE(enum_triangles_cn(g, &w) == enum_triangles_brute(g));
    CHECK(w.ops <= 8 * (g.edge_count() * (degeneracy_order(g).degeneracy + 1) + g.vertex_count()));
  }
}

TEST_CASE("si_to_graph") {
  SetSystem sys;
  sys.universe_size = 1;
  sys.family_a = {{0}};
  sys.family_b = {{0}};
  auto [g, meta] = si_to_graph(sys, QueryBatch{{{0, 0}, {0, 0}}});
  CHECK(g.vertex_count() == 3);
  CHECK(enum_triangles_brute(g).size() == 1);
  CHECK(meta.part == std::vector<Part>{Part::a, Part::b, Part::c});
  auto [h, hm] = si_to_graph(sys, QueryBatch{});
  CHECK(enum_triangles_brute(h).empty());

  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const auto s = random_set_system(rng, 1 + rng.below(12), 1 + rng.below(6), 1 + rng.below(6), 0.4);
    const auto batch = random_batch(rng, s, rng.below(20));
    std::set<QueryPair> distinct(batch.pairs.begin(), batch.pairs.end());
    std::size_t expect = 0;
    for (const auto& q : distinct) expect += brute_intersection(s, QueryBatch{{q}})[0].size();
    auto [gg, mm] = si_to_graph(s, batch);
    CHECK(enum_triangles_brute(gg).size() == expect);
  }
}

TEST_CASE("split_and_orient") {
  SetSystem sys;
  sys.universe_size = 2;
  sys.family_a = {{0, 1}};
  sys.family_b = {{0}, {1}, {0, 1}, {}, {0}};
  QueryBatch batch;
  for (u32 b = 0; b < 5; ++b) batch.pairs.push_back({0, b});
  auto [g, meta] = si_to_graph(sys, batch);
  const auto s = split_and_orient(g, meta, 2);
  std::size_t copies = 0;
  for (u32 v = 0; v < s.graph.vertex_count(); ++v) copies += s.meta.part[v] == Part::a;
  CHECK(copies == 3);
  CHECK(enum_triangles_brute(s.graph).size() == enum_triangles_brute(g).size());
  CHECK(s.orientation.max_outdegree <= 2 + 2);
  std::size_t directed = 0;
  for (u32 v = 0; v < s.graph.vertex_count(); ++v) {
    directed += s.orientation.out[v].size();
    for (u32 w : s.orientation.out[v]) CHECK(s.graph.has_edge(v, w));
  }
  CHECK(directed == s.graph.edge_count());
  CHECK_THROWS_AS(split_and_orient(g, meta, 0), ParameterError);
}

TEST_CASE("hard instance stats") {
  for (u64 seed = 0; seed < 3; ++seed) {
    const auto h = hard_instance(64, 0.5, 0.5, seed);
    CHECK(h.stats.triangles == h.stats.intersection_total);
    CHECK(h.stats.ab_edges == h.stats.queries);
    CHECK(h.stats.max_outdegree <= 2 * h.stats.beta);
    CHECK(h.stats.vertices == h.split.graph.vertex_count());
    CHECK(h.stats.edges == h.split.graph.edge_count());
  }
  std::stringstream s;
  write_stats_header(s);
  write_stats_row(s, hard_instance(32, 0.5, 0.5, 1).stats);
  std::string header;
  std::getline(s, header);
  CHECK(header.find("max_outdegree") != std::string::npos);
}

TEST_CASE("graph text round trip") {
  Rng rng(3);
  const auto g = random_graph(rng, 30, 0.2);
  std::stringstream s;
  write_graph(s, g);
  CHECK(read_graph(s) == g);
  std::stringstream bad("graph 1\n2 1\n0 5\n");
  CHECK_THROWS_AS(read_graph(bad), ParseError);
}
