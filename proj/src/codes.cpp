#include "tsr/codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace tsr {

std::size_t hamming_distance(const CodeWord& x, const CodeWord& y) {
  std::size_t d = 0;
  for (std::size_t k = 0; k < x.words().size(); ++k)
    d += static_cast<std::size_t>(std::popcount(x.words()[k] ^ y.words()[k]));
  return d;
}

std::size_t required_code_distance(std::size_t length, double epsilon) {
  // Guard against 0.125 * 48 landing a hair above 6.
  return static_cast<std::size_t>(std::ceil(epsilon * static_cast<double>(length) - 1e-9));
}

BinaryCode build_code(std::size_t count, std::size_t length, double epsilon, Rng& rng,
                      std::size_t max_attempts) {
  if (count == 0 || length == 0) throw ParameterError("code needs count >= 1 and length >= 1");
  if (!(epsilon > 0.0 && epsilon <= 0.5)) throw ParameterError("code distance epsilon must be in (0, 1/2]");
  if (max_attempts == 0) throw ParameterError("code construction needs at least one attempt");

  BinaryCode code;
  code.count_ = count;
  code.length_ = length;
  code.stride_ = (length + 63) / 64;
  code.epsilon_ = epsilon;
  code.required_ = required_code_distance(length, epsilon);
  code.bits_.assign(count * code.stride_, 0);

  const u64 tail_mask = length % 64 == 0 ? ~u64{0} : (u64{1} << (length % 64)) - 1;
  std::size_t best = 0;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    for (std::size_t w = 0; w < count; ++w) {
      for (std::size_t k = 0; k < code.stride_; ++k) {
        u64 bits = rng.next();
        if (k + 1 == code.stride_) bits &= tail_mask;
        code.bits_[w * code.stride_ + k] = bits;
      }
    }
    std::size_t min_d = length;
    for (std::size_t x = 0; x < count; ++x)
      for (std::size_t y = x + 1; y < count; ++y) min_d = std::min(min_d, hamming_distance(code.word(x), code.word(y)));
    if (min_d >= code.required_) {
      code.min_distance_ = min_d;
      return code;
    }
    best = std::max(best, min_d);
  }
  throw ConstructionFailed("random code missed the required distance in every attempt", best);
}

std::size_t default_code_length(std::size_t n) {
  return 8 * std::max<std::size_t>(1, log2_exact(std::max<std::size_t>(n, 1)));
}

CodeWord encode(const BinaryCode& code, std::size_t index) {
  if (index >= code.count()) throw ParameterError("codeword index out of range");
  return code.word(index);
}

}  // namespace tsr
