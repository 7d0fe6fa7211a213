#pragma once

// Data-parallel inner loops used by the hashing and set-query code.
//
// Every kernel has a scalar reference in tsr::kernels::scalar and, on x86-64,
// an AVX2 variant in tsr::kernels::avx2. The unqualified entry points dispatch
// at runtime on the active ISA. Variants must agree bit-for-bit; the unit tests
// check that on random inputs.

#include <span>
#include <vector>

#include "tsr/common.hpp"

namespace tsr::kernels {

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa) noexcept;

// Best ISA supported by the running CPU (and compiled in).
Isa detected_isa() noexcept;

// ISA currently used by the dispatching entry points. Defaults to
// detected_isa(), or scalar when the environment sets TSR_ISA=scalar.
Isa active_isa() noexcept;

// Throws ParameterError if the CPU cannot run `isa`.
void set_active_isa(Isa isa);

// out[k] = ((a * in[k] + b) & mask) >> shift, with 64-bit wrapping arithmetic.
// With mask = r - 1 and shift = log2(r / m) this is h_{a,b}(x) = (ax + b mod r) / (r/m).
void affine_shift(u64 a, u64 b, u64 mask, unsigned shift, std::span<const u64> in,
                  std::span<u64> out);

// Inputs are strictly increasing sequences.
bool sorted_intersects(std::span<const u32> lhs, std::span<const u32> rhs);

// Appends lhs ∩ rhs to out in increasing order; returns the number appended.
std::size_t sorted_intersect(std::span<const u32> lhs, std::span<const u32> rhs,
                             std::vector<u32>& out);

namespace scalar {
void affine_shift(u64 a, u64 b, u64 mask, unsigned shift, std::span<const u64> in,
                  std::span<u64> out);
bool sorted_intersects(std::span<const u32> lhs, std::span<const u32> rhs);
std::size_t sorted_intersect(std::span<const u32> lhs, std::span<const u32> rhs,
                             std::vector<u32>& out);
}  // namespace scalar

namespace avx2 {
// False when the build has no AVX2 translation unit or the CPU lacks AVX2.
bool available() noexcept;
void affine_shift(u64 a, u64 b, u64 mask, unsigned shift, std::span<const u64> in,
                  std::span<u64> out);
bool sorted_intersects(std::span<const u32> lhs, std::span<const u32> rhs);
std::size_t sorted_intersect(std::span<const u32> lhs, std::span<const u32> rhs,
                             std::vector<u32>& out);
}  // namespace avx2

}  // namespace tsr::kernels
