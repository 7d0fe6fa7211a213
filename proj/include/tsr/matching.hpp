#pragma once

#include <array>
#include <iosfwd>
#include <utility>
#include <vector>

#include <absl/container/flat_hash_set.h>

#include "tsr/common.hpp"
#include "tsr/setsystem.hpp"

namespace tsr {

// Incremental maximum-cardinality matching with an undo log.
//
// insert_edge runs one augmenting-path search through the new edge: an
// alternating BFS from each endpoint that leaves it by its matched edge and
// stops at a free vertex. On bipartite graphs whose matching was maximum before
// the insertion this keeps it maximum.
class MatchGraph {
 public:
  static constexpr u32 unmatched = ~u32{0};

  struct Mark {
    std::size_t position = 0;
    u64 serial = 0;
  };

  struct Snapshot {
    std::size_t vertices = 0;
    std::vector<std::vector<u32>> adjacency;
    std::vector<u32> mate;
    std::size_t size = 0;

    friend bool operator==(const Snapshot&, const Snapshot&) = default;
  };

  u32 insert_vertex();
  // Returns the new matching size. Throws ParameterError on a missing vertex,
  // a self-loop or an existing edge; InvariantError if the two search halves meet.
  std::size_t insert_edge(u32 u, u32 v);
  // Sets the matching directly, without logging. Pairs must be edges.
  void set_matching(const std::vector<std::pair<u32, u32>>& pairs);
  // Forgets all history; earlier marks become invalid.
  void clear_log();

  Mark mark() const noexcept;
  // Throws ParameterError if the mark is not on the current history.
  void rollback(const Mark& to);

  std::size_t vertex_count() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t matching_size() const noexcept { return size_; }
  u32 mate(u32 v) const { return mate_[v]; }
  bool has_edge(u32 u, u32 v) const { return edges_.contains(key(u, v)); }
  const std::vector<u32>& neighbors(u32 v) const { return adj_[v]; }
  std::size_t log_size() const noexcept { return log_.size(); }

  // Graph-search steps plus one per inserted edge, since construction.
  u64 work() const noexcept { return work_; }

  // Partner symmetry, matched pairs are edges, size agrees.
  bool valid() const;
  bool bipartite() const;
  Snapshot snapshot() const;

 private:
  enum class Kind : u8 { vertex, edge, augment };
  struct Record {
    Kind kind;
    u32 u = 0;
    u32 v = 0;
    std::size_t saved_begin = 0;  // into saved_, for augment
    std::size_t old_size = 0;
  };

  static u64 key(u32 u, u32 v) noexcept {
    return u < v ? (u64{u} << 32) | v : (u64{v} << 32) | u;
  }
  void push(Record r);
  // Alternating path from `from` to a free vertex, starting with from's matched edge.
  bool half_path(u32 from, std::vector<u32>& path);

  std::vector<std::vector<u32>> adj_;
  absl::flat_hash_set<u64> edges_;
  std::vector<u32> mate_;
  std::size_t size_ = 0;
  std::vector<Record> log_;
  std::vector<u64> serials_;
  std::vector<std::pair<u32, u32>> saved_;  // (vertex, previous mate)
  u64 next_serial_ = 1;
  u64 work_ = 0;

  std::vector<u32> parent_;
  std::vector<u64> seen_;
  u64 epoch_ = 0;
};

// Vertex ids of the set-disjointness gadget.
struct GadgetMap {
  std::vector<u32> element_a, element_b;  // c_A, c_B
  std::vector<u32> a_prime, a_second;     // a', a''
  std::vector<u32> b_prime, b_second;     // b', b''
  u32 x = 0;
  u32 y = 0;
};

// Edges (c_A, c_B), (s', s''), (a', c_A) for c in a, (b', c_B) for c in b, with
// the copy pairs as the initial (perfect) matching. Throws InvariantError if
// the result is not bipartite.
std::pair<MatchGraph, GadgetMap> build_gadget(const SetSystem& sys);

// Adds (x, a'') and (y, b''); intersecting iff the matching grows. Undone afterwards.
bool sd_query_rollback(MatchGraph& g, const GadgetMap& map, u32 a, u32 b);

// Adds four fresh vertices and the edges (x_ab, a''), (y_ba, b''), reads the
// answer off the size change, then adds (x_ab, x'_ab), (y_ba, y'_ba). The
// matching always grows by exactly 2.
bool sd_query_perfect(MatchGraph& g, const GadgetMap& map, u32 a, u32 b);

// sd_query_perfect, rolled back when its work stays below 9 * N^alpha, N the
// vertex count before the query.
bool sd_query_combined(MatchGraph& g, const GadgetMap& map, u32 a, u32 b, double alpha);

enum class QueryMode { rollback, perfect, combined };

struct QueryRecord {
  std::size_t index = 0;  // position in the input batch
  bool disjoint = false;
  long long size_delta = 0;
  u64 work = 0;
  std::size_t vertices = 0;  // after the query
  bool kept = false;         // combined mode: insertions retained
};

// Runs the batch in canonical order (stable by a) on a fresh gadget.
std::vector<QueryRecord> run_gadget_queries(const SetSystem& sys, const QueryBatch& batch, QueryMode mode,
                                            double alpha = 0.5);

void write_query_csv(std::ostream& out, const std::vector<QueryRecord>& records);

}  // namespace tsr
