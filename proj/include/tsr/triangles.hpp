#pragma once

#include <array>
#include <iosfwd>
#include <utility>
#include <vector>

#include "tsr/common.hpp"
#include "tsr/setsystem.hpp"

namespace tsr {

// Undirected simple graph with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}
  // Duplicate edges are merged; self-loops and out-of-range ends throw ParameterError.
  static Graph from_edges(std::size_t n, const std::vector<std::pair<u32, u32>>& edges);

  std::size_t vertex_count() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }
  const std::vector<u32>& neighbors(u32 v) const { return adj_[v]; }
  bool has_edge(u32 u, u32 v) const;
  // Each edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<std::pair<u32, u32>> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<u32>> adj_;
  std::size_t edges_ = 0;
};

using Triangle = std::array<u32, 3>;  // sorted ascending

// Sorted list of all triangles.
std::vector<Triangle> enum_triangles_brute(const Graph& g);

struct DegeneracyOrder {
  std::vector<u32> order;  // removal sequence
  std::vector<u32> rank;   // rank[v] = position of v in order
  std::size_t degeneracy = 0;
};

// Min-degree peeling, ties to the smallest id.
DegeneracyOrder degeneracy_order(const Graph& g);

// Orient every edge forward along the degeneracy order, then close each
// forward wedge (v, w, x) with a mark table. Sorted output.
std::vector<Triangle> enum_triangles_cn(const Graph& g, OpCounter* work = nullptr);

enum class Part : u8 { a, b, c };

struct TripartiteMeta {
  std::vector<Part> part;
  std::vector<u32> original;  // vertex id in the graph before splitting (identity if unsplit)
};

struct Orientation {
  std::vector<std::vector<u32>> out;
  std::size_t max_outdegree = 0;
};

// Vertices: A sets, then B sets, then the universe. Edges: set-element
// memberships and one A-B edge per distinct query pair.
std::pair<Graph, TripartiteMeta> si_to_graph(const SetSystem& sys, const QueryBatch& batch);

struct SplitGraph {
  Graph graph;
  TripartiteMeta meta;
  Orientation orientation;
};

// Replaces each A-vertex with |E(a, B)| > beta by ceil(|E(a, B)| / beta) copies
// that split its sorted B-neighbors into contiguous chunks and each keep all of
// its C-neighbors. Orients A -> B, A -> C, B -> C.
SplitGraph split_and_orient(const Graph& g, const TripartiteMeta& meta, std::size_t beta);

struct HardStats {
  std::size_t n = 0;
  double gamma = 0;
  double delta = 0;
  u64 seed = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t ab_edges = 0;
  std::size_t queries = 0;  // distinct query pairs
  std::size_t beta = 0;
  std::size_t max_outdegree = 0;
  std::size_t degeneracy = 0;
  std::size_t triangles = 0;
  std::size_t intersection_total = 0;  // sum over distinct queries of |a n b|
};

struct HardInstance {
  SplitGraph split;
  HardStats stats;
};

// Random zero-free instance in [1, 2^20) -> SetIntersection -> graph -> split
// with beta = ceil(3n / R).
HardInstance hard_instance(std::size_t n, double gamma, double delta, u64 seed);

// graph 1 / n m / m lines "u v"
void write_graph(std::ostream& out, const Graph& g);
Graph read_graph(std::istream& in);

void write_stats_header(std::ostream& out);
void write_stats_row(std::ostream& out, const HardStats& s);

}  // namespace tsr
