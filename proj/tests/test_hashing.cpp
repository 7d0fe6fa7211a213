#include <doctest.h>

#include <algorithm>
#include <set>

#include "tsr/hashing.hpp"

using namespace tsr;

TEST_CASE("multiply-shift evaluation") {
  const MultiShiftHash h{3, 16, 4};
  CHECK(eval_multishift(h, 5) == 3);
  CHECK(eval_multishift(h, 7) == 1);
  CHECK(eval_multishift({1, 16, 4}, 0) == 0);
  CHECK_THROWS_AS(eval_multishift(h, 16), ParameterError);
}

TEST_CASE("multiply-shift sampling") {
  Rng r1(0), r2(0);
  const auto h = sample_multishift(r1, 16, 4);
  CHECK(h.a % 2 == 1);
  CHECK(h.a < 16);
  CHECK(sample_multishift(r2, 16, 4).a == h.a);
  Rng r3(0);
  CHECK_THROWS_AS(sample_multishift(r3, 16, 16), ParameterError);
  CHECK_THROWS_AS(sample_multishift(r3, 12, 4), ParameterError);
}

TEST_CASE("multiply-shift is almost linear") {
  Rng rng(3);
  for (int f = 0; f < 50; ++f) {
    const auto h = sample_multishift(rng, 1 << 16, 1 << 6);
    for (int t = 0; t < 2000; ++t) {
      const u64 x = rng.below(1 << 16), y = rng.below((1 << 16) - x);
      const u64 d = (h(x + y) + h.m * 2 - h(x) - h(y)) % h.m;
      REQUIRE(d <= 1);
    }
  }
}

TEST_CASE("pairwise evaluation and sampling") {
  const PairwiseAffineHash h{3, 5, 8, 2, 16};
  CHECK(eval_pairwise(h, 6) == 0);
  CHECK(eval_pairwise(h, 7) == 1);
  CHECK(eval_pairwise({1, 0, 8, 2, 16}, 7) == 0);
  CHECK_THROWS_AS(eval_pairwise(h, 8), ParameterError);

  Rng r1(5), r2(5);
  const auto s = sample_pairwise(r1, 8, 2, 16);
  CHECK(s.a % 2 == 1);
  CHECK(s.b < 16);
  const auto t = sample_pairwise(r2, 8, 2, 16);
  CHECK((s.a == t.a && s.b == t.b));
  CHECK_THROWS_AS(sample_pairwise(r1, 8, 2, 4), ParameterError);
  CHECK(min_pairwise_modulus(8, 2) == 8);
}

TEST_CASE("linear offset values") {
  CHECK(linear_offset({3, 5, 8, 2, 16}) == 0);
  CHECK(linear_offset({1, 1, 8, 2, 16}) == 0);
}

TEST_CASE("pairwise family is exactly pairwise independent at u=8, m=2, r=16") {
  for (u64 x = 0; x < 8; ++x)
    for (u64 y = 0; y < 8; ++y) {
      if (x == y) continue;
      int count[2][2] = {};
      for (u64 a = 1; a < 16; a += 2)
        for (u64 b = 0; b < 16; ++b) {
          const PairwiseAffineHash h{a, b, 8, 2, 16};
          ++count[h(x)][h(y)];
        }
      for (auto& row : count)
        for (int c : row) REQUIRE(c == 32);
    }
}

TEST_CASE("offset_window covers every offset, exhaustively on small families") {
  for (u64 a = 1; a < 64; a += 2)
    for (u64 b = 0; b < 64; ++b) {
      const PairwiseAffineHash h{a, b, 16, 4, 64};
      const auto window = offset_window(h);
      REQUIRE(window.size() <= 3);
      std::set<u64> seen;
      for (u64 x = 0; x < 16; ++x)
        for (u64 y = 0; x + y < 16; ++y) {
          const u64 d = (h(x) + h(y) + 4 - h(x + y)) % 4;
          seen.insert(d);
          REQUIRE(std::find(window.begin(), window.end(), d) != window.end());
        }
      // The two-valued relation holds whenever the low bits of b are extreme.
      const u64 low = b % 16;
      if (low == 0 || low == 15) {
        const u64 c = linear_offset(h);
        for (u64 d : seen) CHECK((d == c || d == (c + 1) % 4));
      }
    }
}

TEST_CASE("companion relation holds for every member, exhaustively") {
  for (u64 a = 1; a < 64; a += 2)
    for (u64 b = 0; b < 64; ++b) {
      const PairwiseAffineHash h{a, b, 16, 4, 64};
      const auto hc = companion(h);
      CHECK(hc.a == a);
      CHECK(hc.b == (2 * b) % 64);
      for (u64 x = 0; x < 16; ++x)
        for (u64 y = 0; x + y < 16; ++y) REQUIRE((hc(x + y) + 8 - h(x) - h(y)) % 4 <= 1);
    }
}

TEST_CASE("the literal c_h relation fails for some members") {
  // b = 5 has low bits 5 mod 16, neither extreme: a third offset appears.
  const PairwiseAffineHash h{1, 5, 16, 4, 64};
  const u64 c = linear_offset(h);
  bool outside = false;
  for (u64 x = 0; x < 16; ++x)
    for (u64 y = 0; x + y < 16; ++y) {
      const u64 d = (h(x) + h(y) + 4 - h(x + y)) % 4;
      outside |= d != c && d != (c + 1) % 4;
    }
  CHECK(outside);
}

TEST_CASE("bucketize partitions its input") {
  Rng rng(9);
  std::vector<u64> s;
  std::set<u64> used;
  while (s.size() < 4096) {
    const u64 x = rng.below(1 << 20);
    if (used.insert(x).second) s.push_back(x);
  }
  const auto h = sample_pairwise(rng, 1 << 20, 64, min_pairwise_modulus(1 << 20, 64));
  const auto t = bucketize(h, s, HeavyThreshold::balanced(s.size(), 64));
  std::multiset<u64> all(t.heavy_elements.begin(), t.heavy_elements.end());
  for (const auto& b : t.buckets) {
    CHECK_FALSE(t.heavy_threshold.exceeded_by(b.size()));
    all.insert(b.begin(), b.end());
  }
  CHECK(all == std::multiset<u64>(s.begin(), s.end()));
  CHECK(t.element_count() + t.heavy_elements.size() == s.size());
}

TEST_CASE("bucketize thresholds") {
  std::vector<u64> s = {0, 1, 2, 3, 4, 5, 6, 7};
  const auto spread = bucketize(MultiShiftHash{1, 8, 4}, s, HeavyThreshold::balanced(8, 4));
  CHECK(spread.heavy_elements.empty());
  // Everything below u/m lands in bucket 0.
  std::vector<u64> crowd;
  for (u64 k = 0; k < 8; ++k) crowd.push_back(k * 16);
  const auto heavy = bucketize(MultiShiftHash{1, 1024, 4}, crowd, HeavyThreshold::balanced(8, 4));
  CHECK(heavy.heavy_elements.size() == 8);
}

TEST_CASE("mean heavy count stays small") {
  std::size_t total = 0;
  for (u64 seed = 0; seed < 100; ++seed) {
    Rng rng = Rng::stream(seed, "test.balance");
    std::set<u64> used;
    std::vector<u64> s;
    while (s.size() < 4096) {
      const u64 x = rng.below(1 << 20);
      if (used.insert(x).second) s.push_back(x);
    }
    const auto h = sample_pairwise(rng, 1 << 20, 64, min_pairwise_modulus(1 << 20, 64));
    total += bucketize(h, s, HeavyThreshold::balanced(s.size(), 64)).heavy_elements.size();
  }
  CHECK(total / 100.0 <= 8 * 64);
}
