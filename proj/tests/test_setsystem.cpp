#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tsr/setsystem.hpp"

using namespace tsr;

namespace {

SetSystem two(std::vector<u32> a, std::vector<u32> b, u64 universe = 8) {
  SetSystem s;
  s.universe_size = universe;
  s.family_a = {std::move(a)};
  s.family_b = {std::move(b)};
  return s;
}

const QueryBatch kOne{{{0, 0}}};

}  // namespace

TEST_CASE("brute disjointness and intersection examples") {
  CHECK(brute_disjointness(two({1, 2}, {3, 4}), kOne) == std::vector<bool>{true});
  CHECK(brute_disjointness(two({1, 2, 3}, {3, 4}), kOne) == std::vector<bool>{false});
  CHECK(brute_disjointness(two({}, {3, 4}), kOne) == std::vector<bool>{true});
  CHECK(brute_intersection(two({1, 2, 3}, {3, 4}), kOne)[0] == std::vector<u32>{3});
  CHECK(brute_intersection(two({1, 2}, {1, 2}), kOne)[0] == std::vector<u32>{1, 2});
  CHECK(brute_intersection(two({}, {5}), kOne)[0].empty());
}

TEST_CASE("heavy/light single-element cases") {
  for (auto backend : {"brute", "heavylight"}) {
    auto b = make_backend(backend);
    CHECK(b->disjointness(two({4}, {4}), kOne) == std::vector<bool>{false});
    CHECK(b->disjointness(two({4}, {5}), kOne) == std::vector<bool>{true});
  }
  CHECK_THROWS_AS(make_backend("nope"), ParameterError);
}

TEST_CASE("heavy classification") {
  SetSystem singles;
  singles.universe_size = 16;
  for (u32 k = 0; k < 16; ++k) singles.family_a.push_back({k});
  singles.family_b = singles.family_a;
  CHECK(HeavyLightStructure(singles).heavy_count() == 0);

  SetSystem one_big;
  one_big.universe_size = 16;
  one_big.family_a.push_back({});
  for (u32 k = 0; k < 16; ++k) one_big.family_a[0].push_back(k);
  one_big.family_b = {{3}};
  const HeavyLightStructure s(one_big);
  CHECK(s.heavy_a(0));
  CHECK_FALSE(s.heavy_b(0));
}

TEST_CASE("heavy/light equals brute force with bounded work") {
  Rng rng(1);
  for (int t = 0; t < 60; ++t) {
    SetSystem sys = random_set_system(rng, 1 + rng.below(300), 1 + rng.below(30), 1 + rng.below(30),
                                      rng.uniform() * 0.3);
    if (t % 3 == 0) {
      sys.family_a[0].clear();
      for (u32 e = 0; e < sys.universe_size; e += 2) sys.family_a[0].push_back(e);
    }
    const auto batch = random_batch(rng, sys, 1000);
    OpCounter pre;
    const auto s = build_heavylight(sys, &pre);
    const double n = static_cast<double>(std::max<std::size_t>(1, s.total_size()));
    CHECK(static_cast<double>(pre.ops) <= 16 * std::pow(n, 1.5) + 16);
    std::size_t heavy_sets = 0;
    for (u32 a = 0; a < sys.family_a.size(); ++a) heavy_sets += s.heavy_a(a);
    for (u32 b = 0; b < sys.family_b.size(); ++b) heavy_sets += s.heavy_b(b);
    CHECK(static_cast<double>(heavy_sets) <= 2 * std::sqrt(n));
    const auto truth = brute_disjointness(sys, batch);
    const auto inter = brute_intersection(sys, batch);
    for (std::size_t q = 0; q < batch.pairs.size(); ++q) {
      OpCounter w;
      REQUIRE(query_heavylight(s, batch.pairs[q].a, batch.pairs[q].b, &w) == truth[q]);
      CHECK(static_cast<double>(w.ops) <= 16 * std::sqrt(n));
      REQUIRE(s.intersection(batch.pairs[q].a, batch.pairs[q].b) == inter[q]);
    }
  }
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(two({3, 2}, {}).validate(), ParameterError);
  CHECK_THROWS_AS(two({2, 2}, {}).validate(), ParameterError);
  CHECK_THROWS_AS(two({9}, {}).validate(), ParameterError);
  CHECK_THROWS_AS((QueryBatch{{{1, 0}}}.validate(two({}, {}))), ParameterError);
}

TEST_CASE("setsys text round trip") {
  Rng rng(2);
  const auto sys = random_set_system(rng, 40, 5, 7, 0.2);
  const auto batch = random_batch(rng, sys, 9);
  std::stringstream s;
  write_setsys(s, sys, batch);
  const auto [sys2, batch2] = read_setsys(s);
  CHECK(sys2 == sys);
  CHECK(batch2 == batch);
  std::stringstream bad("setsys 1\n4\n1\n0\n0\n2 3 1\n");
  CHECK_THROWS_AS(read_setsys(bad), ParseError);
}
