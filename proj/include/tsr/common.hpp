#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tsr {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Error hierarchy. ParameterError maps to CLI exit code 2, InvariantError to 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InvariantError : public Error {
 public:
  using Error::Error;
};

class ConstructionFailed : public Error {
 public:
  ConstructionFailed(const std::string& what, u64 best = 0) : Error(what), best_(best) {}
  // Best figure of merit reached before giving up (e.g. minimum distance of a code).
  u64 best() const noexcept { return best_; }

 private:
  u64 best_;
};

constexpr bool is_pow2(u64 x) noexcept { return x != 0 && (x & (x - 1)) == 0; }

constexpr unsigned log2_exact(u64 x) noexcept {
  unsigned k = 0;
  while ((u64{1} << k) < x) ++k;
  return k;
}

// Least power of two >= x (x >= 1).
constexpr u64 ceil_pow2(u64 x) noexcept { return x <= 1 ? 1 : u64{1} << log2_exact(x); }

// Least power of four >= x (x >= 1).
constexpr u64 ceil_pow4(u64 x) noexcept {
  u64 p = 1;
  while (p < x) p <<= 2;
  return p;
}

constexpr u64 isqrt_pow4(u64 q) noexcept { return u64{1} << (log2_exact(q) / 2); }

// Counter of elementary operations; the unit is defined by each caller.
struct OpCounter {
  u64 ops = 0;
  void add(u64 k = 1) noexcept { ops += k; }
};

inline void bump(OpCounter* c, u64 k = 1) noexcept {
  if (c) c->add(k);
}

// Deterministic random source. Streams are derived from one 64-bit seed plus a
// component label and index, so draws in one component never shift another's.
class Rng {
 public:
  explicit Rng(u64 seed) noexcept;

  static Rng stream(u64 seed, std::string_view label, u64 index = 0) noexcept;

  u64 next() noexcept;
  // Uniform in [0, bound); bound > 0.
  u64 below(u64 bound) noexcept;
  // Uniform in [lo, hi].
  u64 between(u64 lo, u64 hi) noexcept { return lo + below(hi - lo + 1); }
  // Uniform double in [0, 1).
  double uniform() noexcept;
  bool bernoulli(double p) noexcept { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

u64 splitmix64(u64& state) noexcept;

}  // namespace tsr
