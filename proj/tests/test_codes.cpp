#include <doctest.h>

#include "tsr/codes.hpp"

using namespace tsr;

namespace {

std::size_t min_pairwise(const BinaryCode& code) {
  std::size_t best = code.length();
  for (std::size_t x = 0; x < code.count(); ++x)
    for (std::size_t y = x + 1; y < code.count(); ++y) {
      std::size_t d = 0;
      for (std::size_t k = 0; k < code.length(); ++k) d += code.word(x).bit(k) != code.word(y).bit(k);
      best = std::min(best, d);
    }
  return best;
}

}  // namespace

TEST_CASE("single codeword") {
  Rng rng(1);
  const auto code = build_code(1, 8, 0.49, rng);
  CHECK(code.count() == 1);
  CHECK(code.length() == 8);
}

TEST_CASE("two words at distance four") {
  Rng rng(2);
  const auto code = build_code(2, 8, 0.5, rng);
  CHECK(min_pairwise(code) >= 4);
  CHECK(hamming_distance(code.word(0), code.word(1)) == min_pairwise(code));
}

TEST_CASE("default-rate code verifies by bit count") {
  Rng rng(3);
  const auto code = build_code(64, 48, 1.0 / 8, rng);
  CHECK(code.required_distance() == 6);
  CHECK(min_pairwise(code) >= 6);
  CHECK(code.min_distance() == min_pairwise(code));
}

TEST_CASE("distance invariant over many constructions") {
  for (u64 seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    const std::size_t count = 2 + rng.below(100);
    const std::size_t length = default_code_length(count);
    const auto code = build_code(count, length, kDefaultCodeEpsilon, rng);
    CHECK(min_pairwise(code) >= required_code_distance(length, kDefaultCodeEpsilon));
  }
}

TEST_CASE("encode") {
  Rng rng(4);
  const auto code = build_code(5, 16, 0.25, rng);
  CHECK(encode(code, 0) == code.word(0));
  CHECK(encode(code, 3) == encode(code, 3));
  CHECK_THROWS_AS(encode(code, 5), ParameterError);
}

TEST_CASE("construction failure carries the best distance") {
  Rng rng(5);
  // 64 distinct 6-bit words cannot all be at distance 3.
  try {
    build_code(64, 6, 0.5, rng, 4);
    FAIL("expected ConstructionFailed");
  } catch (const ConstructionFailed& e) {
    CHECK(e.best() < 3);
  }
  CHECK_THROWS_AS(build_code(0, 8, 0.25, rng), ParameterError);
  CHECK_THROWS_AS(build_code(2, 8, 0.0, rng), ParameterError);
}

TEST_CASE("default code length") {
  CHECK(default_code_length(1) == 8);
  CHECK(default_code_length(64) == 48);
  CHECK(default_code_length(65) == 56);
}
