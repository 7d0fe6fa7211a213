#include <doctest.h>

#include <algorithm>
#include <vector>

#include "tsr/kernels.hpp"

using namespace tsr;

namespace {

std::vector<u32> random_sorted(Rng& rng, std::size_t universe, double density) {
  std::vector<u32> out;
  for (u32 e = 0; e < universe; ++e)
    if (rng.bernoulli(density)) out.push_back(e);
  return out;
}

}  // namespace

TEST_CASE("scalar affine_shift matches the formula") {
  std::vector<u64> in = {0, 1, 6, 7, 1000, ~u64{0}};
  std::vector<u64> out(in.size());
  kernels::scalar::affine_shift(3, 5, 15, 3, in, out);
  for (std::size_t k = 0; k < in.size(); ++k) CHECK(out[k] == (((3 * in[k] + 5) & 15) >> 3));
}

TEST_CASE("avx2 affine_shift agrees with scalar") {
  if (!kernels::avx2::available()) return;
  Rng rng(11);
  for (std::size_t len : {0, 1, 3, 4, 5, 17, 64, 1001}) {
    std::vector<u64> in(len);
    for (auto& x : in) x = rng.next();
    for (int t = 0; t < 20; ++t) {
      const u64 a = rng.next() | 1, b = rng.next();
      const unsigned bits = 1 + static_cast<unsigned>(rng.below(63));
      const u64 mask = bits == 64 ? ~u64{0} : (u64{1} << bits) - 1;
      const unsigned shift = static_cast<unsigned>(rng.below(bits));
      std::vector<u64> s(len), v(len);
      kernels::scalar::affine_shift(a, b, mask, shift, in, s);
      kernels::avx2::affine_shift(a, b, mask, shift, in, v);
      CHECK(s == v);
    }
  }
}

TEST_CASE("intersection kernels agree with std::set_intersection") {
  Rng rng(12);
  for (int t = 0; t < 400; ++t) {
    const std::size_t universe = 1 + rng.below(600);
    const auto x = random_sorted(rng, universe, rng.uniform());
    const auto y = random_sorted(rng, universe, rng.uniform() * 0.3);
    std::vector<u32> expect;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(expect));

    std::vector<u32> s;
    CHECK(kernels::scalar::sorted_intersect(x, y, s) == expect.size());
    CHECK(s == expect);
    CHECK(kernels::scalar::sorted_intersects(x, y) == !expect.empty());
    if (kernels::avx2::available()) {
      std::vector<u32> v = {7};  // appends, keeps the prefix
      CHECK(kernels::avx2::sorted_intersect(x, y, v) == expect.size());
      CHECK(std::equal(v.begin() + 1, v.end(), expect.begin(), expect.end()));
      CHECK(kernels::avx2::sorted_intersects(x, y) == !expect.empty());
      CHECK(kernels::avx2::sorted_intersects(y, x) == !expect.empty());
    }
  }
}

TEST_CASE("isa selection") {
  const auto before = kernels::active_isa();
  kernels::set_active_isa(kernels::Isa::scalar);
  CHECK(kernels::active_isa() == kernels::Isa::scalar);
  if (kernels::avx2::available()) {
    kernels::set_active_isa(kernels::Isa::avx2);
    CHECK(kernels::active_isa() == kernels::Isa::avx2);
  } else {
    CHECK_THROWS_AS(kernels::set_active_isa(kernels::Isa::avx2), ParameterError);
  }
  kernels::set_active_isa(before);
}
