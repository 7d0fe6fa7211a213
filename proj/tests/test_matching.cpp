#include <doctest.h>

#include <functional>

#include "tsr/matching.hpp"

using namespace tsr;

namespace {

// Exhaustive maximum matching over edge subsets, for tiny graphs.
std::size_t exhaustive_matching(std::size_t n, const std::vector<std::pair<u32, u32>>& edges) {
  std::size_t best = 0;
  std::vector<bool> used(n, false);
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t k, std::size_t size) {
    best = std::max(best, size);
    if (k == edges.size() || size + (edges.size() - k) <= best) return;
    const auto [u, v] = edges[k];
    if (!used[u] && !used[v]) {
      used[u] = used[v] = true;
      go(k + 1, size + 1);
      used[u] = used[v] = false;
    }
    go(k + 1, size);
  };
  go(0, 0);
  return best;
}

SetSystem single(std::vector<u32> a, std::vector<u32> b, u64 universe) {
  SetSystem s;
  s.universe_size = universe;
  s.family_a = {std::move(a)};
  s.family_b = {std::move(b)};
  return s;
}

}  // namespace

TEST_CASE("basic insertions") {
  MatchGraph g;
  CHECK(g.insert_vertex() == 0);
  CHECK(g.insert_vertex() == 1);
  CHECK(g.matching_size() == 0);
  CHECK(g.insert_edge(0, 1) == 1);
  CHECK_THROWS_AS(g.insert_edge(0, 1), ParameterError);
  CHECK_THROWS_AS(g.insert_edge(0, 0), ParameterError);
  CHECK_THROWS_AS(g.insert_edge(0, 7), ParameterError);

  // Two matched edges joined in the middle: no augmenting path.
  MatchGraph h;
  for (int k = 0; k < 4; ++k) h.insert_vertex();
  h.insert_edge(0, 1);
  h.insert_edge(2, 3);
  CHECK(h.insert_edge(1, 2) == 2);
  CHECK(h.valid());
}

TEST_CASE("incremental size equals exhaustive maximum on general small graphs") {
  Rng rng(1);
  for (int t = 0; t < 300; ++t) {
    const std::size_t left = 1 + rng.below(6), right = 1 + rng.below(6);
    std::vector<std::pair<u32, u32>> edges;
    for (u32 u = 0; u < left; ++u)
      for (u32 v = 0; v < right; ++v)
        if (rng.bernoulli(0.4)) edges.emplace_back(u, static_cast<u32>(left + v));
    for (std::size_t i = edges.size(); i > 1; --i) std::swap(edges[i - 1], edges[rng.below(i)]);
    MatchGraph g;
    for (std::size_t v = 0; v < left + right; ++v) g.insert_vertex();
    for (auto [u, v] : edges) {
      g.insert_edge(u, v);
      REQUIRE(g.valid());
    }
    CHECK(g.matching_size() == exhaustive_matching(left + right, edges));
    CHECK(g.bipartite());
  }
}

TEST_CASE("rollback") {
  MatchGraph g;
  for (int k = 0; k < 4; ++k) g.insert_vertex();
  g.insert_edge(0, 1);
  const auto snap = g.snapshot();
  const auto m1 = g.mark();
  g.insert_edge(1, 2);
  g.insert_edge(2, 3);
  const auto mid = g.snapshot();
  const auto m2 = g.mark();
  g.insert_vertex();
  g.insert_edge(3, 4);
  g.rollback(m2);
  CHECK(g.snapshot() == mid);
  g.rollback(m1);
  CHECK(g.snapshot() == snap);
  CHECK_THROWS_AS(g.rollback(m2), ParameterError);
  const auto m3 = g.mark();
  g.insert_edge(1, 2);
  g.clear_log();
  CHECK_THROWS_AS(g.rollback(m3), ParameterError);
}

TEST_CASE("gadget shape") {
  auto [g, map] = build_gadget(single({0}, {0}, 1));
  CHECK(g.vertex_count() == 8);
  CHECK(g.edge_count() == 5);
  CHECK(g.matching_size() == 3);
  CHECK(g.valid());
  auto [e, emap] = build_gadget(SetSystem{});
  CHECK(e.vertex_count() == 2);
  CHECK(e.matching_size() == 0);
}

TEST_CASE("gadget queries") {
  {
    auto [g, map] = build_gadget(single({0}, {0}, 1));
    const auto snap = g.snapshot();
    CHECK_FALSE(sd_query_rollback(g, map, 0, 0));
    CHECK(g.snapshot() == snap);
    CHECK_FALSE(sd_query_rollback(g, map, 0, 0));
  }
  {
    auto [g, map] = build_gadget(single({0}, {1}, 2));
    CHECK(g.vertex_count() == 10);
    CHECK(sd_query_rollback(g, map, 0, 0));
    const std::size_t before = g.matching_size();
    CHECK(sd_query_perfect(g, map, 0, 0));
    CHECK(g.matching_size() == before + 2);
    CHECK(sd_query_perfect(g, map, 0, 0));
  }
  {
    auto [g, map] = build_gadget(single({0}, {0}, 1));
    const std::size_t n = g.vertex_count();
    for (int k = 0; k < 5; ++k) CHECK_FALSE(sd_query_combined(g, map, 0, 0, 100.0));
    CHECK(g.vertex_count() == n);
    CHECK_FALSE(sd_query_combined(g, map, 0, 0, 0.0));
  }
}

TEST_CASE("all modes agree with brute force on random systems") {
  Rng rng(2);
  for (int t = 0; t < 80; ++t) {
    const auto sys = random_set_system(rng, 1 + rng.below(32), 1 + rng.below(16), 1 + rng.below(16), 0.15);
    const auto batch = random_batch(rng, sys, 20);
    const auto truth = brute_disjointness(sys, batch);
    for (auto mode : {QueryMode::rollback, QueryMode::perfect, QueryMode::combined}) {
      const auto recs = run_gadget_queries(sys, batch, mode, 0.5);
      REQUIRE(recs.size() == batch.pairs.size());
      for (const auto& r : recs) {
        CHECK(r.disjoint == truth[r.index]);
        if (mode == QueryMode::rollback) CHECK(r.size_delta == 0);
        if (mode == QueryMode::perfect) CHECK(r.size_delta == 2);
      }
      for (std::size_t k = 1; k < recs.size(); ++k)
        CHECK(batch.pairs[recs[k - 1].index].a <= batch.pairs[recs[k].index].a);
    }
  }
}
