#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "tsr/common.hpp"
#include "tsr/hashing.hpp"
#include "tsr/setsystem.hpp"
#include "tsr/threesum.hpp"

namespace tsr {

// 3SUM -> offline SetDisjointness / SetIntersection.
//
// Witnesses are read as s = p + q. The sum s is bucketed with h1' = companion(h1),
// summands with h1, so that h1(p) = h1'(s) - h1(q) - e1 for some e1 in {0, 1}.
// Likewise h2'(s) - h2(p) = h2(q) + e2. For a query element z and up-bucket i:
//   j  = i - h1(z) - e1 (mod R)                 down-bucket
//   D  = -(h2(z) + e2) (mod Q) = ju sqrt(Q) + jd
//   up-set(t, i, ju)   = { h2'(x) + ju sqrt(Q) : x in up-bucket i }
//   down-set(t, j, jd) = { h2(y) - jd          : y in down-bucket j }
// and the two sets meet iff h2'(x) - h2(y) = h2(z) + e2 for some x, y.

enum class SetQueryKind { disjointness, intersection };

struct QueryOrigin {
  u64 z = 0;
  u32 i = 0;       // up-bucket
  u32 j = 0;       // down-bucket
  u8 e1 = 0;
  u8 e2 = 0;
  u32 round = 0;
  u32 shift_up = 0;
  u32 shift_down = 0;
};

struct SDPlan {
  SetQueryKind kind = SetQueryKind::disjointness;
  std::size_t n = 0;
  double gamma = 0;
  double delta = 0;
  u64 R = 1;
  u64 Q = 1;
  u64 sqrt_q = 1;
  PairwiseAffineHash h1;
  PairwiseAffineHash h1_sum;  // companion(h1)
  std::vector<PairwiseAffineHash> rounds;
  std::vector<PairwiseAffineHash> rounds_sum;  // companions
  BucketTable up;    // light elements under h1_sum
  BucketTable down;  // light elements under h1
  HeavyThreshold heavy_threshold;
  std::vector<u64> heavy;  // heavy under h1 or h1_sum, sorted
  std::vector<u64> light;  // the rest, sorted
  std::vector<QueryOrigin> origins;  // parallel to the query batch

  std::size_t round_count() const noexcept { return rounds.size(); }
  u32 up_set(std::size_t round, u64 i, u64 shift) const noexcept {
    return static_cast<u32>((round * R + i) * sqrt_q + shift);
  }
  u32 down_set(std::size_t round, u64 j, u64 shift) const noexcept { return up_set(round, j, shift); }
};

struct SDInstance {
  SetSystem sys;
  QueryBatch batch;
  SDPlan plan;
};

// R = 2^ceil(gamma log2 n).
u64 bucket_count(std::size_t n, double gamma);
// Least power of four >= ceil(25 n^2 / R^2).
u64 sd_universe(std::size_t n, u64 R);
// Least power of four >= ceil(n^(1+delta) / R).
u64 si_universe(std::size_t n, u64 R, double delta);
// max(1, ceil(2 log2 n)).
std::size_t sd_round_count(std::size_t n);

SDInstance build_sd_instance(const ThreeSumInstance& inst, double gamma, u64 seed);
SDInstance build_si_instance(const ThreeSumInstance& inst, double gamma, double delta, u64 seed);

// Scans up-bucket i for a sum x with x - z or x + z in the instance.
std::optional<Witness3> verify_candidate(const ThreeSumInstance& inst, const SDPlan& plan, u64 z,
                                         u64 i, OpCounter* work = nullptr);

// A witness using e in any role, by direct O(n) scans.
std::optional<Witness3> heavy_witness(const ThreeSumInstance& inst, u64 e);

struct SDRunStats {
  std::size_t heavy = 0;
  std::size_t queries = 0;
  std::size_t candidates = 0;        // (z, i) pairs passed to verify_candidate
  std::size_t false_candidates = 0;  // of which verification failed
  std::size_t reported = 0;          // total intersection size (SetIntersection only)
  u64 verify_work = 0;
  u64 backend_work = 0;
};

std::optional<Witness3> solve_3sum_via_sd(const ThreeSumInstance& inst, double gamma,
                                          SetQueryBackend& backend, u64 seed,
                                          SDRunStats* stats = nullptr);
std::optional<Witness3> solve_3sum_via_si(const ThreeSumInstance& inst, double gamma, double delta,
                                          SetQueryBackend& backend, u64 seed,
                                          SDRunStats* stats = nullptr);

// JSON summary of the plan parameters and hash functions.
void write_plan(std::ostream& out, const SDPlan& plan);

}  // namespace tsr
