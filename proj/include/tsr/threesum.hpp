#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "tsr/common.hpp"

namespace tsr {

// Distinct nonnegative integers below a power-of-two universe u, kept sorted.
class ThreeSumInstance {
 public:
  ThreeSumInstance() = default;
  // Sorts; throws ParameterError on duplicates, values >= u, or u not a power of two.
  ThreeSumInstance(std::vector<u64> values, u64 u);

  std::span<const u64> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  u64 universe() const noexcept { return u_; }
  bool contains(u64 x) const noexcept;
  u64 max_value() const noexcept { return values_.empty() ? 0 : values_.back(); }

  friend bool operator==(const ThreeSumInstance&, const ThreeSumInstance&) = default;

 private:
  std::vector<u64> values_;
  u64 u_ = 2;
};

// x + y = z with x != y, all three in the instance.
struct Witness3 {
  u64 x = 0;
  u64 y = 0;
  u64 z = 0;

  friend bool operator==(const Witness3&, const Witness3&) = default;
};

// The subtraction form used by the set-query reductions: minuend - subtrahend = difference.
struct DifferenceTriple {
  u64 minuend = 0;
  u64 subtrahend = 0;
  u64 difference = 0;

  friend bool operator==(const DifferenceTriple&, const DifferenceTriple&) = default;
};

// (x, y, z) with x + y = z  <->  z - y = x.
DifferenceTriple to_difference(const Witness3& w) noexcept;
Witness3 from_difference(const DifferenceTriple& d) noexcept;

bool is_valid_witness(const ThreeSumInstance& inst, const Witness3& w) noexcept;

// O(n^2) pair scan with hashed membership; first witness in sorted (x, y) order.
std::optional<Witness3> solve_3sum_bruteforce(const ThreeSumInstance& inst);

// All witnesses (0, y, y). Empty when 0 is absent.
std::vector<Witness3> zero_witnesses(const ThreeSumInstance& inst);

ThreeSumInstance strip_zero(const ThreeSumInstance& inst);

// Convolution3SUM vector: cells hold a value or a hole.
struct ConvInstance {
  static constexpr u64 hole = ~u64{0};

  std::vector<u64> cells;

  std::size_t length() const noexcept { return cells.size(); }
  bool is_hole(std::size_t i) const noexcept { return cells[i] == hole; }

  friend bool operator==(const ConvInstance&, const ConvInstance&) = default;
};

// cells[i] + cells[j] = cells[i + j], none of them holes; i == j allowed.
struct WitnessConv {
  std::size_t i = 0;
  std::size_t j = 0;

  friend bool operator==(const WitnessConv&, const WitnessConv&) = default;
};

bool is_valid_conv_witness(const ConvInstance& conv, const WitnessConv& w) noexcept;

// allow_equal is the textbook definition. distinct additionally requires i != j;
// the reduction from 3SUM needs it, since i = j gives A(i) + A(i) = A(2i), a
// pattern the vector layout does not rule out.
enum class IndexRule { allow_equal, distinct };

// Scans every (i, j) with i + j < length; first witness in lexicographic order.
std::optional<WitnessConv> solve_conv_bruteforce(const ConvInstance& conv,
                                                 IndexRule rule = IndexRule::allow_equal);

// Same answer as solve_conv_bruteforce, but only visits non-hole cells.
std::optional<WitnessConv> solve_conv_sparse(const ConvInstance& conv,
                                             IndexRule rule = IndexRule::allow_equal);

// Replaces holes with inf = 2 max + 1, the numeric dummy. Sound when values are
// positive: no two real values sum to inf, and inf plus a positive value exceeds
// every cell that is not inf.
ConvInstance to_numeric(const ConvInstance& conv);

enum class Plant {
  none,     // uniform distinct values in [1, u)
  witness,  // as none, plus a random x + y = z
  sumfree,  // values chosen so that no witness exists
};

// Deterministic per rng state. Requires n <= u / 2.
ThreeSumInstance gen_instance(std::size_t n, u64 u, Plant plant, Rng& rng);

// Text formats.
//   3sum 1 / n u / v1 v2 ...
//   conv3sum 1 / len / tokens, '_' for a hole
void write_instance(std::ostream& out, const ThreeSumInstance& inst);
ThreeSumInstance read_instance(std::istream& in);
void write_conv(std::ostream& out, const ConvInstance& conv);
ConvInstance read_conv(std::istream& in);

}  // namespace tsr
