#include "tsr/common.hpp"

namespace tsr {

u64 splitmix64(u64& state) noexcept {
  u64 z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(u64 seed) noexcept : engine_(seed) {}

Rng Rng::stream(u64 seed, std::string_view label, u64 index) noexcept {
  // FNV-1a over the label, then mixed with seed and index.
  u64 h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : label) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  u64 state = seed ^ h;
  u64 a = splitmix64(state);
  state ^= index * 0xd1b54a32d192ed03ULL;
  u64 b = splitmix64(state);
  return Rng(a ^ (b << 1));
}

u64 Rng::next() noexcept { return engine_(); }

u64 Rng::below(u64 bound) noexcept {
  if (is_pow2(bound)) return next() & (bound - 1);
  // Rejection on the largest multiple of bound.
  const u64 limit = std::numeric_limits<u64>::max() - std::numeric_limits<u64>::max() % bound;
  u64 v;
  do {
    v = next();
  } while (v >= limit);
  return v % bound;
}

double Rng::uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

}  // namespace tsr
