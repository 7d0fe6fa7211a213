#include "tsr/hashing.hpp"

#include <algorithm>

#include "tsr/kernels.hpp"

namespace tsr {

namespace {

void check_universe(u64 u, u64 m) {
  if (!is_pow2(u) || !is_pow2(m)) throw ParameterError("hash universe and range must be powers of two");
}

template <class Hash>
BucketTable bucketize_impl(const Hash& h, std::span<const u64> elements, HeavyThreshold threshold) {
  std::vector<u64> codes(elements.size());
  h.eval(elements, codes);
  BucketTable table;
  table.m = h.m;
  table.heavy_threshold = threshold;
  table.buckets.assign(h.m, {});
  for (std::size_t k = 0; k < elements.size(); ++k) table.buckets[codes[k]].push_back(elements[k]);
  for (auto& bucket : table.buckets) {
    if (threshold.exceeded_by(bucket.size())) {
      table.heavy_elements.insert(table.heavy_elements.end(), bucket.begin(), bucket.end());
      bucket.clear();
    }
  }
  return table;
}

}  // namespace

void MultiShiftHash::eval(std::span<const u64> xs, std::span<u64> out) const {
  kernels::affine_shift(a, 0, u - 1, shift(), xs, out);
}

void PairwiseAffineHash::eval(std::span<const u64> xs, std::span<u64> out) const {
  kernels::affine_shift(a, b, r - 1, shift(), xs, out);
}

MultiShiftHash sample_multishift(Rng& rng, u64 u, u64 m) {
  check_universe(u, m);
  if (m >= u) throw ParameterError("multiply-shift hashing needs m < u");
  MultiShiftHash h;
  h.u = u;
  h.m = m;
  h.a = rng.below(u / 2) * 2 + 1;
  return h;
}

u64 eval_multishift(const MultiShiftHash& h, u64 x) {
  if (x >= h.u) throw ParameterError("hash argument outside [u]");
  return h(x);
}

u64 min_pairwise_modulus(u64 u, u64 m) {
  check_universe(u, m);
  return std::max<u64>(u / 2, 1) * m;
}

PairwiseAffineHash sample_pairwise(Rng& rng, u64 u, u64 m, u64 r) {
  check_universe(u, m);
  if (!is_pow2(r)) throw ParameterError("hash modulus must be a power of two");
  if (r % m != 0 || r / m < std::max<u64>(u / 2, 1))
    throw ParameterError("pairwise family needs r = k m with k >= u/2");
  PairwiseAffineHash h;
  h.u = u;
  h.m = m;
  h.r = r;
  h.a = r == 1 ? 1 : rng.below(r / 2) * 2 + 1;
  h.b = rng.below(r);
  return h;
}

u64 eval_pairwise(const PairwiseAffineHash& h, u64 x) {
  if (x >= h.u) throw ParameterError("hash argument outside [u]");
  return h(x);
}

u64 linear_offset(const PairwiseAffineHash& h) noexcept {
  return ((h.b + h.r - 1) & (h.r - 1)) >> h.shift();
}

std::vector<u64> offset_window(const PairwiseAffineHash& h) {
  const u64 step = h.r / h.m;
  const u64 high = h.b / step;
  const u64 low = h.b % step;
  // Offsets relative to b / step: a missing carry from the low bits of h(x), h(x')
  // contributes -1; the low bits of b may add a carry of +1.
  std::vector<int> rel;
  if (step == 1) {
    rel = {0};
  } else if (low == 0) {
    rel = {-1, 0};
  } else if (low == step - 1) {
    rel = {0, 1};
  } else {
    rel = {-1, 0, 1};
  }
  std::vector<u64> out;
  for (int d : rel) out.push_back((high + h.m + static_cast<u64>(d + 1) - 1) % h.m);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PairwiseAffineHash companion(const PairwiseAffineHash& h) noexcept {
  PairwiseAffineHash c = h;
  c.b = (2 * h.b) & (h.r - 1);
  return c;
}

std::size_t BucketTable::element_count() const noexcept {
  std::size_t total = heavy_elements.size();
  for (const auto& bucket : buckets) total += bucket.size();
  return total;
}

BucketTable bucketize(const MultiShiftHash& h, std::span<const u64> elements,
                      HeavyThreshold threshold) {
  return bucketize_impl(h, elements, threshold);
}

BucketTable bucketize(const PairwiseAffineHash& h, std::span<const u64> elements,
                      HeavyThreshold threshold) {
  return bucketize_impl(h, elements, threshold);
}

}  // namespace tsr
