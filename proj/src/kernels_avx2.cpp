#include "tsr/kernels.hpp"

#if defined(TSR_HAVE_AVX2)

#include <immintrin.h>

#include <bit>

namespace tsr::kernels::avx2 {

namespace {

// Low 64 bits of the lane-wise 64x64 product.
inline __m256i mullo_epi64(__m256i x, __m256i a) {
  const __m256i lo = _mm256_mul_epu32(x, a);
  const __m256i x_hi = _mm256_srli_epi64(x, 32);
  const __m256i a_hi = _mm256_srli_epi64(a, 32);
  const __m256i cross = _mm256_add_epi64(_mm256_mul_epu32(x_hi, a), _mm256_mul_epu32(x, a_hi));
  return _mm256_add_epi64(lo, _mm256_slli_epi64(cross, 32));
}

// Bitmask over the 8 lanes of `va` that equal some lane of `vb`.
inline unsigned block_match_mask(__m256i va, __m256i vb) {
  const __m256i rot = _mm256_setr_epi32(1, 2, 3, 4, 5, 6, 7, 0);
  __m256i acc = _mm256_cmpeq_epi32(va, vb);
  for (int r = 1; r < 8; ++r) {
    vb = _mm256_permutevar8x32_epi32(vb, rot);
    acc = _mm256_or_si256(acc, _mm256_cmpeq_epi32(va, vb));
  }
  return static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(acc)));
}

inline __m256i load8(const u32* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

}  // namespace

bool available() noexcept { return __builtin_cpu_supports("avx2"); }

void affine_shift(u64 a, u64 b, u64 mask, unsigned shift, std::span<const u64> in,
                  std::span<u64> out) {
  const __m256i va = _mm256_set1_epi64x(static_cast<long long>(a));
  const __m256i vb = _mm256_set1_epi64x(static_cast<long long>(b));
  const __m256i vm = _mm256_set1_epi64x(static_cast<long long>(mask));
  const __m128i vs = _mm_cvtsi32_si128(static_cast<int>(shift));
  std::size_t k = 0;
  for (; k + 4 <= in.size(); k += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in.data() + k));
    x = _mm256_add_epi64(mullo_epi64(x, va), vb);
    x = _mm256_srl_epi64(_mm256_and_si256(x, vm), vs);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + k), x);
  }
  for (; k < in.size(); ++k) out[k] = ((a * in[k] + b) & mask) >> shift;
}

bool sorted_intersects(std::span<const u32> lhs, std::span<const u32> rhs) {
  std::size_t i = 0, j = 0;
  while (i + 8 <= lhs.size() && j + 8 <= rhs.size()) {
    if (block_match_mask(load8(lhs.data() + i), load8(rhs.data() + j)) != 0) return true;
    const u32 lmax = lhs[i + 7], rmax = rhs[j + 7];
    if (lmax <= rmax) i += 8;
    if (rmax <= lmax) j += 8;
  }
  return scalar::sorted_intersects(lhs.subspan(i), rhs.subspan(j));
}

std::size_t sorted_intersect(std::span<const u32> lhs, std::span<const u32> rhs,
                             std::vector<u32>& out) {
  std::size_t i = 0, j = 0, found = 0;
  while (i + 8 <= lhs.size() && j + 8 <= rhs.size()) {
    unsigned mask = block_match_mask(load8(lhs.data() + i), load8(rhs.data() + j));
    while (mask != 0) {
      out.push_back(lhs[i + static_cast<std::size_t>(std::countr_zero(mask))]);
      ++found;
      mask &= mask - 1;
    }
    const u32 lmax = lhs[i + 7], rmax = rhs[j + 7];
    if (lmax <= rmax) i += 8;
    if (rmax <= lmax) j += 8;
  }
  return found + scalar::sorted_intersect(lhs.subspan(i), rhs.subspan(j), out);
}

}  // namespace tsr::kernels::avx2

#else

namespace tsr::kernels::avx2 {

bool available() noexcept { return false; }

void affine_shift(u64 a, u64 b, u64 mask, unsigned shift, std::span<const u64> in,
                  std::span<u64> out) {
  scalar::affine_shift(a, b, mask, shift, in, out);
}

bool sorted_intersects(std::span<const u32> lhs, std::span<const u32> rhs) {
  return scalar::sorted_intersects(lhs, rhs);
}

std::size_t sorted_intersect(std::span<const u32> lhs, std::span<const u32> rhs,
                             std::vector<u32>& out) {
  return scalar::sorted_intersect(lhs, rhs, out);
}

}  // namespace tsr::kernels::avx2

#endif
