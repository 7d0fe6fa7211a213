#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tsr/codes.hpp"
#include "tsr/common.hpp"
#include "tsr/hashing.hpp"
#include "tsr/threesum.hpp"

namespace tsr {

// 3SUM -> Convolution3SUM through L bucketing hashes and a binary code.
//
// Each of the 8TL vectors A_l, l = (i, alpha, beta, gamma), has 2m blocks of 7T
// cells. For block j and in-block offset t:
//   t = T + k        x(i, j, k) when C_x(i) xor beta = 0   (j < m only)
//   t = 2T + k       x(i, j, k) when C_x(i) xor beta = 1   (j < m only)
//   t = 3T + (k + gamma mod 2T)   x(i, j - alpha mod m, k)
//   anything else    hole
// where x(i, j, k) is the k-th smallest element of bucket j under hash i, and
// buckets holding more than T elements are discarded.

struct ConvConfig {
  double epsilon = kDefaultCodeEpsilon;
  std::size_t T = 0;  // 0 selects ceil(12 / epsilon)
  std::size_t L = 0;  // 0 selects default_code_length(n)
  std::size_t max_resamples = 64;
  std::size_t code_attempts = kDefaultCodeAttempts;
};

std::size_t default_bucket_cap(double epsilon);

struct EllIndex {
  std::size_t i = 0;
  int alpha = 0;  // -1 or 0
  int beta = 0;   // 0 or 1
  std::size_t gamma = 0;

  friend bool operator==(const EllIndex&, const EllIndex&) = default;
};

class ConvPlan {
 public:
  static constexpr u32 discarded = ~u32{0};

  std::size_t n = 0;
  u64 m = 1;
  std::size_t T = 0;
  std::size_t L = 0;
  std::vector<MultiShiftHash> hashes;
  BinaryCode code;
  // Per hash: cap-T buckets, discarded elements in heavy_elements.
  std::vector<BucketTable> bucket_tables;
  // Instance values; the code word of values[r] is code.word(r).
  std::vector<u64> values;
  // slot[i][r]: position k of values[r] in its bucket under hash i, or discarded.
  std::vector<std::vector<u32>> slot;
  std::size_t resamples = 0;

  std::size_t instance_count() const noexcept { return 8 * T * L; }
  std::size_t vector_length() const noexcept { return 14 * T * m; }
  std::size_t block_length() const noexcept { return 7 * T; }

  // Rank of x among values, or nullopt.
  std::optional<std::size_t> rank_of(u64 x) const noexcept;
  bool bad(std::size_t rank) const noexcept;
  std::size_t discard_count(std::size_t rank) const noexcept;
  // l = ((i * 2 + (alpha + 1)) * 2 + beta) * 2T + gamma, a bijection onto [8TL).
  EllIndex ell_at(std::size_t index) const;
  std::size_t index_of(const EllIndex& ell) const;
};

// Las Vegas: resamples all L hashes while any element is bad, i.e. discarded
// by more than 4L/T of them. Requires 0 not in inst.
ConvPlan plan_conv(const ThreeSumInstance& inst, const ConvConfig& config, Rng& rng);

// Test hook for the self-test: corrupts the layout written by build_vector.
enum class LayoutFault { none, gamma_shift };
void set_layout_fault(LayoutFault fault) noexcept;
LayoutFault layout_fault() noexcept;

ConvInstance build_vector(const ConvPlan& plan, const EllIndex& ell);
// Writes into out, which is resized and cleared to holes.
void build_vector_into(const ConvPlan& plan, const EllIndex& ell, ConvInstance& out);

struct ConvPrediction {
  EllIndex ell;
  std::size_t p_a = 0;
  std::size_t p_b = 0;
  std::size_t p_c = 0;
};

// The l under which (w.x, w.y, w.z) sits at p_a + p_b = p_c, taking the first
// hash that keeps all three and separates the code words of w.x and w.y.
std::optional<ConvPrediction> predict_ell(const ConvPlan& plan, const Witness3& w);

// Reads the triple at (wc.i, wc.j, wc.i + wc.j). Throws InvariantError unless it
// is a 3SUM witness of the planned instance.
Witness3 map_witness(const ConvPlan& plan, const EllIndex& ell, const WitnessConv& wc,
                     const ConvInstance& vec);

using ConvSolver = std::function<std::optional<WitnessConv>(const ConvInstance&)>;

// solve_conv_sparse with distinct indices.
ConvSolver default_conv_solver();

struct ConvRunStats {
  std::size_t calls = 0;
  std::size_t T = 0;
  std::size_t L = 0;
  std::size_t resamples = 0;
};

std::optional<Witness3> solve_3sum_via_conv(const ThreeSumInstance& inst, const ConvSolver& solver,
                                            const ConvConfig& config, Rng& rng,
                                            ConvRunStats* stats = nullptr);

}  // namespace tsr
