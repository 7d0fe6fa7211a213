#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "tsr/common.hpp"

namespace tsr {

// Read-only view of one codeword.
class CodeWord {
 public:
  CodeWord(std::span<const u64> words, std::size_t length) : words_(words), length_(length) {}

  std::size_t length() const noexcept { return length_; }
  bool bit(std::size_t pos) const { return (words_[pos / 64] >> (pos % 64)) & 1U; }
  std::span<const u64> words() const noexcept { return words_; }

  friend bool operator==(const CodeWord& x, const CodeWord& y) {
    return x.length_ == y.length_ && std::equal(x.words_.begin(), x.words_.end(), y.words_.begin());
  }

 private:
  std::span<const u64> words_;
  std::size_t length_;
};

std::size_t hamming_distance(const CodeWord& x, const CodeWord& y);

// A binary code of `count` words of `length` bits whose pairwise Hamming
// distance is at least required_distance() = ceil(epsilon * length).
// The distance is verified exhaustively when the code is built.
class BinaryCode {
 public:
  std::size_t count() const noexcept { return count_; }
  std::size_t length() const noexcept { return length_; }
  double epsilon() const noexcept { return epsilon_; }
  std::size_t required_distance() const noexcept { return required_; }
  // Smallest pairwise distance actually present (length() when count() < 2).
  std::size_t min_distance() const noexcept { return min_distance_; }

  CodeWord word(std::size_t index) const {
    return CodeWord({bits_.data() + index * stride_, stride_}, length_);
  }

  friend BinaryCode build_code(std::size_t, std::size_t, double, Rng&, std::size_t);

 private:
  std::size_t count_ = 0;
  std::size_t length_ = 0;
  std::size_t stride_ = 0;
  double epsilon_ = 0;
  std::size_t required_ = 0;
  std::size_t min_distance_ = 0;
  std::vector<u64> bits_;
};

inline constexpr std::size_t kDefaultCodeAttempts = 64;

std::size_t required_code_distance(std::size_t length, double epsilon);

// Rejection-sampled random code. Throws ConstructionFailed (carrying the best
// minimum distance seen) when max_attempts samples all miss the distance.
BinaryCode build_code(std::size_t count, std::size_t length, double epsilon, Rng& rng,
                      std::size_t max_attempts = kDefaultCodeAttempts);

// L = 8 * ceil(log2 n), at least 8.
std::size_t default_code_length(std::size_t n);
inline constexpr double kDefaultCodeEpsilon = 1.0 / 8.0;

CodeWord encode(const BinaryCode& code, std::size_t index);

}  // namespace tsr
