#include "tsr/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace tsr::kernels {

namespace scalar {

void affine_shift(u64 a, u64 b, u64 mask, unsigned shift, std::span<const u64> in,
                  std::span<u64> out) {
  for (std::size_t k = 0; k < in.size(); ++k) out[k] = ((a * in[k] + b) & mask) >> shift;
}

bool sorted_intersects(std::span<const u32> lhs, std::span<const u32> rhs) {
  std::size_t i = 0, j = 0;
  while (i < lhs.size() && j < rhs.size()) {
    if (lhs[i] < rhs[j]) {
      ++i;
    } else if (rhs[j] < lhs[i]) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

std::size_t sorted_intersect(std::span<const u32> lhs, std::span<const u32> rhs,
                             std::vector<u32>& out) {
  std::size_t i = 0, j = 0, found = 0;
  while (i < lhs.size() && j < rhs.size()) {
    if (lhs[i] < rhs[j]) {
      ++i;
    } else if (rhs[j] < lhs[i]) {
      ++j;
    } else {
      out.push_back(lhs[i]);
      ++found;
      ++i;
      ++j;
    }
  }
  return found;
}

}  // namespace scalar

namespace {

Isa initial_isa() noexcept {
  const char* env = std::getenv("TSR_ISA");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::scalar;
  return detected_isa();
}

std::atomic<Isa>& active() noexcept {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

const char* isa_name(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa detected_isa() noexcept { return avx2::available() ? Isa::avx2 : Isa::scalar; }

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::avx2 && !avx2::available()) throw ParameterError("AVX2 not available");
  active().store(isa, std::memory_order_relaxed);
}

void affine_shift(u64 a, u64 b, u64 mask, unsigned shift, std::span<const u64> in,
                  std::span<u64> out) {
  if (active_isa() == Isa::avx2) return avx2::affine_shift(a, b, mask, shift, in, out);
  scalar::affine_shift(a, b, mask, shift, in, out);
}

bool sorted_intersects(std::span<const u32> lhs, std::span<const u32> rhs) {
  if (active_isa() == Isa::avx2) return avx2::sorted_intersects(lhs, rhs);
  return scalar::sorted_intersects(lhs, rhs);
}

std::size_t sorted_intersect(std::span<const u32> lhs, std::span<const u32> rhs,
                             std::vector<u32>& out) {
  if (active_isa() == Isa::avx2) return avx2::sorted_intersect(lhs, rhs, out);
  return scalar::sorted_intersect(lhs, rhs, out);
}

}  // namespace tsr::kernels
