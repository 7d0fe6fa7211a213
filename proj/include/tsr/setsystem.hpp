#pragma once

#include <iosfwd>
#include <memory>
#include <string_view>
#include <vector>

#include <absl/container/flat_hash_set.h>

#include "tsr/common.hpp"

namespace tsr {

// Two families of sorted, duplicate-free subsets of [universe_size].
struct SetSystem {
  u64 universe_size = 0;
  std::vector<std::vector<u32>> family_a;
  std::vector<std::vector<u32>> family_b;

  // Throws ParameterError on unsorted lists, duplicates or out-of-range ids.
  void validate() const;
  // N: the total size of all sets.
  std::size_t total_size() const noexcept;

  friend bool operator==(const SetSystem&, const SetSystem&) = default;
};

struct QueryPair {
  u32 a = 0;
  u32 b = 0;

  friend bool operator==(const QueryPair&, const QueryPair&) = default;
  friend auto operator<=>(const QueryPair&, const QueryPair&) = default;
};

struct QueryBatch {
  std::vector<QueryPair> pairs;

  void validate(const SetSystem& sys) const;
  friend bool operator==(const QueryBatch&, const QueryBatch&) = default;
};

// Bit q is true iff the q-th pair is disjoint.
std::vector<bool> brute_disjointness(const SetSystem& sys, const QueryBatch& batch);
std::vector<std::vector<u32>> brute_intersection(const SetSystem& sys, const QueryBatch& batch);

// Online structure with O(N sqrt N) preprocessing and O(sqrt N) queries. A set
// is heavy iff |S|^2 > N; heavy x heavy answers are tabulated, every other
// query walks the light side against a membership index.
class HeavyLightStructure {
 public:
  explicit HeavyLightStructure(const SetSystem& sys, OpCounter* work = nullptr);

  bool disjoint(u32 a, u32 b, OpCounter* work = nullptr) const;
  std::vector<u32> intersection(u32 a, u32 b, OpCounter* work = nullptr) const;

  std::size_t total_size() const noexcept { return total_; }
  bool heavy_a(u32 a) const noexcept { return heavy_index_a_[a] != npos; }
  bool heavy_b(u32 b) const noexcept { return heavy_index_b_[b] != npos; }
  std::size_t heavy_count() const noexcept { return heavy_a_count_ + heavy_b_count_; }

 private:
  static constexpr u32 npos = ~u32{0};

  bool member_a(u32 a, u32 e) const { return index_.count(key(0, a, e)) != 0; }
  bool member_b(u32 b, u32 e) const { return index_.count(key(1, b, e)) != 0; }
  static u64 key(u64 side, u64 set, u64 e) noexcept { return (side << 63) | (set << 32) | e; }

  const SetSystem* sys_;
  std::size_t total_ = 0;
  std::vector<u32> heavy_index_a_;
  std::vector<u32> heavy_index_b_;
  std::size_t heavy_a_count_ = 0;
  std::size_t heavy_b_count_ = 0;
  std::vector<bool> heavy_disjoint_;  // heavy_a_count_ x heavy_b_count_, row-major
  absl::flat_hash_set<u64> index_;
};

HeavyLightStructure build_heavylight(const SetSystem& sys, OpCounter* work = nullptr);
bool query_heavylight(const HeavyLightStructure& s, u32 a, u32 b, OpCounter* work = nullptr);

// The offline "algorithm" a reduction hands its batch to.
class SetQueryBackend {
 public:
  virtual ~SetQueryBackend() = default;
  virtual std::string_view name() const noexcept = 0;
  virtual std::vector<bool> disjointness(const SetSystem& sys, const QueryBatch& batch) = 0;
  virtual std::vector<std::vector<u32>> intersection(const SetSystem& sys,
                                                     const QueryBatch& batch) = 0;
  // Work counted by the last call, in backend-defined units.
  u64 last_work() const noexcept { return work_.ops; }

 protected:
  OpCounter work_;
};

// "brute" or "heavylight"; ParameterError otherwise.
std::unique_ptr<SetQueryBackend> make_backend(std::string_view name);

// Each element joins each set independently with probability density.
SetSystem random_set_system(Rng& rng, u64 universe, std::size_t na, std::size_t nb, double density);
// q pairs drawn uniformly, with repetition.
QueryBatch random_batch(Rng& rng, const SetSystem& sys, std::size_t q);

// setsys 1 / universe_size / |A| / |B| / q / each set as "size e1 e2 ..." / q lines "a b"
void write_setsys(std::ostream& out, const SetSystem& sys, const QueryBatch& batch);
std::pair<SetSystem, QueryBatch> read_setsys(std::istream& in);

}  // namespace tsr
