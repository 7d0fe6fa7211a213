#pragma once

#include <span>
#include <vector>

#include "tsr/common.hpp"

namespace tsr {

// h_a(x) = (a x mod u) / (u / m): the multiply-shift family over [u] -> [m].
// 2-universal and almost linear: h(x + x') - h(x) - h(x') in {0, 1} (mod m)
// whenever x, x', x + x' are all in [u].
struct MultiShiftHash {
  u64 a = 1;
  u64 u = 2;
  u64 m = 1;

  u64 operator()(u64 x) const noexcept { return ((a * x) & (u - 1)) >> shift(); }
  unsigned shift() const noexcept { return log2_exact(u / m); }
  void eval(std::span<const u64> xs, std::span<u64> out) const;
};

// h_{a,b}(x) = (a x + b mod r) / (r / m), with r = k m, k >= u/2, all powers of two.
// Pairwise independent over the choice of (a odd, b).
struct PairwiseAffineHash {
  u64 a = 1;
  u64 b = 0;
  u64 u = 2;
  u64 m = 1;
  u64 r = 1;

  u64 operator()(u64 x) const noexcept { return ((a * x + b) & (r - 1)) >> shift(); }
  unsigned shift() const noexcept { return log2_exact(r / m); }
  void eval(std::span<const u64> xs, std::span<u64> out) const;
};

MultiShiftHash sample_multishift(Rng& rng, u64 u, u64 m);
u64 eval_multishift(const MultiShiftHash& h, u64 x);

PairwiseAffineHash sample_pairwise(Rng& rng, u64 u, u64 m, u64 r);
// Smallest admissible modulus for (u, m): r = (u/2) m.
u64 min_pairwise_modulus(u64 u, u64 m);
u64 eval_pairwise(const PairwiseAffineHash& h, u64 x);

// c_h = (b - 1 mod r) / (r / m).
//
// Note: h(x) + h(x') - h(x + x') - c_h (mod m) lies in {0, 1} only when
// b mod (r/m) is 0 or r/m - 1. For other b the carry out of the low bits of b
// adds a third value, so the difference lies in {-1, 0, 1}. See
// offset_window() and companion().
u64 linear_offset(const PairwiseAffineHash& h) noexcept;

// Values that h(x) + h(x') - h(x + x') (mod m) may take for x, x', x + x' in [u].
// Sorted, deduplicated; at most three entries. A superset when u is small.
std::vector<u64> offset_window(const PairwiseAffineHash& h);

// The member h_{a, 2b mod r} of the same family. For all x, x', x + x' in [u]:
//   companion(h)(x + x') - h(x) - h(x') in {0, 1}   (mod m).
// The reductions hash the "sum" role with the companion to keep two cases.
PairwiseAffineHash companion(const PairwiseAffineHash& h) noexcept;

// Exact rational threshold num/den; a bucket of size s is heavy iff s * den > num.
struct HeavyThreshold {
  u64 num = 0;
  u64 den = 1;

  bool exceeded_by(std::size_t size) const noexcept { return static_cast<u64>(size) * den > num; }
  // The balance bound 3n/m.
  static HeavyThreshold balanced(std::size_t n, u64 m) noexcept { return {3 * static_cast<u64>(n), m}; }
};

// Elements of S grouped by hash value. Buckets whose size exceeds the threshold
// are emptied and their elements moved to heavy_elements.
struct BucketTable {
  u64 m = 0;
  std::vector<std::vector<u64>> buckets;
  HeavyThreshold heavy_threshold;
  std::vector<u64> heavy_elements;

  std::size_t element_count() const noexcept;
};

BucketTable bucketize(const MultiShiftHash& h, std::span<const u64> elements,
                      HeavyThreshold threshold);
BucketTable bucketize(const PairwiseAffineHash& h, std::span<const u64> elements,
                      HeavyThreshold threshold);

}  // namespace tsr
