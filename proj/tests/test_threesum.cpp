#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "tsr/threesum.hpp"

using namespace tsr;

namespace {

// Independent cubic oracle over sorted values.
bool cubic_has_witness(const ThreeSumInstance& inst) {
  const auto v = inst.values();
  for (u64 x : v)
    for (u64 y : v)
      for (u64 z : v)
        if (x != y && x + y == z) return true;
  return false;
}

ConvInstance conv(std::vector<u64> cells) { return ConvInstance{std::move(cells)}; }

}  // namespace

TEST_CASE("brute force examples") {
  CHECK(solve_3sum_bruteforce(ThreeSumInstance({1, 2, 3}, 8)) == Witness3{1, 2, 3});
  CHECK_FALSE(solve_3sum_bruteforce(ThreeSumInstance({1, 2, 4}, 8)));
  CHECK(solve_3sum_bruteforce(ThreeSumInstance({3, 4, 7, 50}, 64)) == Witness3{3, 4, 7});
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(ThreeSumInstance({1, 1}, 8), ParameterError);
  CHECK_THROWS_AS(ThreeSumInstance({8}, 8), ParameterError);
  CHECK_THROWS_AS(ThreeSumInstance({1}, 12), ParameterError);
  const ThreeSumInstance inst({5, 1, 3}, 8);
  CHECK(std::vector<u64>(inst.values().begin(), inst.values().end()) == std::vector<u64>{1, 3, 5});
}

TEST_CASE("zero witnesses") {
  const auto w = zero_witnesses(ThreeSumInstance({0, 5, 9}, 16));
  CHECK(w == std::vector<Witness3>{{0, 5, 5}, {0, 9, 9}});
  CHECK(zero_witnesses(ThreeSumInstance({1, 5, 9}, 16)).empty());
  CHECK(zero_witnesses(ThreeSumInstance({0}, 16)).empty());
  CHECK_FALSE(strip_zero(ThreeSumInstance({0, 5, 9}, 16)).contains(0));
}

TEST_CASE("conv brute force examples") {
  // (1, 1) comes first lexicographically: 1 + 1 = 2.
  CHECK(solve_conv_bruteforce(conv({9, 1, 2, 3})) == WitnessConv{1, 1});
  CHECK(solve_conv_bruteforce(conv({9, 1, 2, 3}), IndexRule::distinct) == WitnessConv{1, 2});
  CHECK(solve_conv_bruteforce(conv({9, 2, 4})) == WitnessConv{1, 1});
  CHECK_FALSE(solve_conv_bruteforce(conv({9, 2, 4}), IndexRule::distinct));
  CHECK_FALSE(solve_conv_bruteforce(conv({1, 5, 9})));
  const u64 H = ConvInstance::hole;
  CHECK_FALSE(solve_conv_bruteforce(conv({H, 1, 3, H})));
}

TEST_CASE("sparse conv solver equals the dense scan") {
  Rng rng(7);
  for (int t = 0; t < 500; ++t) {
    ConvInstance c;
    const std::size_t len = 1 + rng.below(40);
    for (std::size_t k = 0; k < len; ++k) c.cells.push_back(rng.bernoulli(0.4) ? ConvInstance::hole : rng.below(12));
    for (auto rule : {IndexRule::allow_equal, IndexRule::distinct}) {
      const auto a = solve_conv_bruteforce(c, rule), b = solve_conv_sparse(c, rule);
      REQUIRE(a == b);
      if (a) CHECK(is_valid_conv_witness(c, *a));
    }
  }
}

TEST_CASE("numeric holes preserve the answer on positive vectors") {
  Rng rng(8);
  for (int t = 0; t < 300; ++t) {
    ConvInstance c;
    const std::size_t len = 1 + rng.below(30);
    for (std::size_t k = 0; k < len; ++k) c.cells.push_back(rng.bernoulli(0.5) ? ConvInstance::hole : 1 + rng.below(20));
    CHECK(solve_conv_bruteforce(c).has_value() == solve_conv_bruteforce(to_numeric(c)).has_value());
  }
}

TEST_CASE("generator") {
  Rng rng(7);
  CHECK(solve_3sum_bruteforce(gen_instance(3, 1 << 10, Plant::witness, rng)));
  Rng r1(1), r2(1);
  CHECK(gen_instance(100, 1 << 20, Plant::none, r1) == gen_instance(100, 1 << 20, Plant::none, r2));
  CHECK_THROWS_AS(gen_instance(600, 1 << 10, Plant::none, rng), ParameterError);
  for (int t = 0; t < 50; ++t) {
    const auto inst = gen_instance(1 + rng.below(60), 1 << 12, Plant::sumfree, rng);
    CHECK_FALSE(cubic_has_witness(inst));
  }
}

TEST_CASE("brute force agrees with the cubic oracle and is order invariant") {
  Rng rng(9);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng.below(40);
    const auto inst = gen_instance(n, 1024, t % 2 ? Plant::none : Plant::sumfree, rng);
    const auto w = solve_3sum_bruteforce(inst);
    REQUIRE(w.has_value() == cubic_has_witness(inst));
    std::vector<u64> shuffled(inst.values().begin(), inst.values().end());
    std::reverse(shuffled.begin(), shuffled.end());
    CHECK(solve_3sum_bruteforce(ThreeSumInstance(shuffled, 1024)).has_value() == w.has_value());
    if (w) {
      CHECK(is_valid_witness(inst, *w));
      const auto d = to_difference(*w);
      CHECK(d.minuend - d.subtrahend == d.difference);
      CHECK(from_difference(d) == *w);
    }
  }
}

TEST_CASE("text formats round trip") {
  Rng rng(10);
  const auto inst = gen_instance(20, 1 << 12, Plant::witness, rng);
  std::stringstream s;
  write_instance(s, inst);
  CHECK(read_instance(s) == inst);

  const ConvInstance c = conv({4, ConvInstance::hole, 0, 17});
  std::stringstream t;
  write_conv(t, c);
  CHECK(t.str().find('_') != std::string::npos);
  CHECK(read_conv(t) == c);

  std::stringstream bad("3sum 1\n2 8\n1 9\n");
  CHECK_THROWS_AS(read_instance(bad), ParseError);
  std::stringstream wrong("graph 1\n");
  CHECK_THROWS_AS(read_instance(wrong), ParseError);
}
