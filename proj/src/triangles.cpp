#include "tsr/triangles.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "textio.hpp"
#include "tsr/sd_reduction.hpp"
#include "tsr/threesum.hpp"

namespace tsr {

Graph Graph::from_edges(std::size_t n, const std::vector<std::pair<u32, u32>>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw ParameterError("edge end outside vertex range");
    if (u == v) throw ParameterError("self-loop");
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (auto& list : g.adj_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    g.edges_ += list.size();
  }
  g.edges_ /= 2;
  return g;
}

bool Graph::has_edge(u32 u, u32 v) const {
  const auto& list = adj_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::pair<u32, u32>> Graph::edges() const {
  std::vector<std::pair<u32, u32>> out;
  out.reserve(edges_);
  for (u32 u = 0; u < adj_.size(); ++u)
    for (u32 v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::vector<Triangle> enum_triangles_brute(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = true;
  std::vector<Triangle> out;
  for (u32 i = 0; i < n; ++i)
    for (u32 j = i + 1; j < n; ++j) {
      if (!adj[i][j]) continue;
      for (u32 k = j + 1; k < n; ++k)
        if (adj[i][k] && adj[j][k]) out.push_back({i, j, k});
    }
  return out;
}

DegeneracyOrder degeneracy_order(const Graph& g) {
  const std::size_t n = g.vertex_count();
  DegeneracyOrder d;
  d.rank.assign(n, 0);
  std::vector<std::size_t> degree(n);
  std::set<std::pair<std::size_t, u32>> queue;
  for (u32 v = 0; v < n; ++v) {
    degree[v] = g.neighbors(v).size();
    queue.emplace(degree[v], v);
  }
  std::vector<bool> removed(n, false);
  while (!queue.empty()) {
    const auto [deg, v] = *queue.begin();
    queue.erase(queue.begin());
    d.degeneracy = std::max(d.degeneracy, deg);
    d.rank[v] = static_cast<u32>(d.order.size());
    d.order.push_back(v);
    removed[v] = true;
    for (u32 w : g.neighbors(v)) {
      if (removed[w]) continue;
      queue.erase({degree[w], w});
      queue.emplace(--degree[w], w);
    }
  }
  return d;
}

std::vector<Triangle> enum_triangles_cn(const Graph& g, OpCounter* work) {
  const std::size_t n = g.vertex_count();
  const DegeneracyOrder d = degeneracy_order(g);
  std::vector<std::vector<u32>> forward(n);
  for (u32 v = 0; v < n; ++v) {
    for (u32 w : g.neighbors(v)) {
      bump(work);
      if (d.rank[w] > d.rank[v]) forward[v].push_back(w);
    }
  }

  std::vector<Triangle> out;
  std::vector<bool> mark(n, false);
  for (u32 v = 0; v < n; ++v) {
    bump(work);
    for (u32 w : forward[v]) mark[w] = true;
    bump(work, forward[v].size());
    for (u32 w : forward[v]) {
      for (u32 x : forward[w]) {
        bump(work);
        if (mark[x]) {
          Triangle t{v, w, x};
          std::sort(t.begin(), t.end());
          out.push_back(t);
        }
      }
    }
    for (u32 w : forward[v]) mark[w] = false;
    bump(work, forward[v].size());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<Graph, TripartiteMeta> si_to_graph(const SetSystem& sys, const QueryBatch& batch) {
  sys.validate();
  batch.validate(sys);
  const u32 na = static_cast<u32>(sys.family_a.size());
  const u32 nb = static_cast<u32>(sys.family_b.size());
  const std::size_t n = na + nb + sys.universe_size;
  const u32 c0 = na + nb;

  std::vector<std::pair<u32, u32>> edges;
  for (u32 a = 0; a < na; ++a)
    for (u32 c : sys.family_a[a]) edges.emplace_back(a, c0 + c);
  for (u32 b = 0; b < nb; ++b)
    for (u32 c : sys.family_b[b]) edges.emplace_back(na + b, c0 + c);
  for (const auto& q : batch.pairs) edges.emplace_back(q.a, na + q.b);

  TripartiteMeta meta;
  meta.part.assign(n, Part::c);
  std::fill(meta.part.begin(), meta.part.begin() + na, Part::a);
  std::fill(meta.part.begin() + na, meta.part.begin() + c0, Part::b);
  meta.original.resize(n);
  for (u32 v = 0; v < n; ++v) meta.original[v] = v;
  return {Graph::from_edges(n, edges), std::move(meta)};
}

SplitGraph split_and_orient(const Graph& g, const TripartiteMeta& meta, std::size_t beta) {
  if (beta == 0) throw ParameterError("split cap beta must be at least 1");
  const std::size_t n = g.vertex_count();
  for (auto [u, v] : g.edges())
    if (meta.part[u] == meta.part[v]) throw ParameterError("graph is not tripartite under meta");

  // New ids: A copies, then B, then C, each in input order.
  std::vector<u32> first_copy(n, 0), copies(n, 1), new_id(n, 0);
  u32 next = 0;
  for (u32 v = 0; v < n; ++v) {
    if (meta.part[v] != Part::a) continue;
    std::size_t deg_b = 0;
    for (u32 w : g.neighbors(v)) deg_b += meta.part[w] == Part::b;
    copies[v] = static_cast<u32>(std::max<std::size_t>(1, (deg_b + beta - 1) / beta));
    first_copy[v] = next;
    next += copies[v];
  }
  for (Part p : {Part::b, Part::c})
    for (u32 v = 0; v < n; ++v)
      if (meta.part[v] == p) new_id[v] = next++;

  SplitGraph out;
  out.meta.part.resize(next);
  out.meta.original.resize(next);
  out.orientation.out.resize(next);
  std::vector<std::pair<u32, u32>> edges;
  auto arc = [&](u32 from, u32 to) {
    edges.emplace_back(from, to);
    out.orientation.out[from].push_back(to);
  };

  for (u32 v = 0; v < n; ++v) {
    const Part p = meta.part[v];
    if (p == Part::a) {
      std::vector<u32> bs, cs;
      for (u32 w : g.neighbors(v)) (meta.part[w] == Part::b ? bs : cs).push_back(w);
      for (u32 k = 0; k < copies[v]; ++k) {
        const u32 id = first_copy[v] + k;
        out.meta.part[id] = Part::a;
        out.meta.original[id] = meta.original[v];
        for (std::size_t t = k * beta; t < std::min(bs.size(), (k + 1) * beta); ++t) arc(id, new_id[bs[t]]);
        for (u32 c : cs) arc(id, new_id[c]);
      }
    } else {
      const u32 id = new_id[v];
      out.meta.part[id] = p;
      out.meta.original[id] = meta.original[v];
      if (p == Part::b)
        for (u32 w : g.neighbors(v))
          if (meta.part[w] == Part::c) arc(id, new_id[w]);
    }
  }
  for (auto& list : out.orientation.out) {
    std::sort(list.begin(), list.end());
    out.orientation.max_outdegree = std::max(out.orientation.max_outdegree, list.size());
  }
  out.graph = Graph::from_edges(next, edges);
  return out;
}

HardInstance hard_instance(std::size_t n, double gamma, double delta, u64 seed) {
  Rng rng = Rng::stream(seed, "hard.instance");
  const ThreeSumInstance inst = gen_instance(n, u64{1} << 20, Plant::none, rng);
  SDInstance si = build_si_instance(inst, gamma, delta, seed);

  QueryBatch distinct = si.batch;
  std::sort(distinct.pairs.begin(), distinct.pairs.end());
  distinct.pairs.erase(std::unique(distinct.pairs.begin(), distinct.pairs.end()), distinct.pairs.end());

  auto [g, meta] = si_to_graph(si.sys, distinct);
  const std::size_t beta = std::max<std::size_t>(1, (3 * n + si.plan.R - 1) / si.plan.R);

  HardInstance out;
  out.split = split_and_orient(g, meta, beta);
  HardStats& s = out.stats;
  s.n = n;
  s.gamma = gamma;
  s.delta = delta;
  s.seed = seed;
  s.vertices = out.split.graph.vertex_count();
  s.edges = out.split.graph.edge_count();
  for (auto [u, v] : out.split.graph.edges()) {
    const Part pu = out.split.meta.part[u], pv = out.split.meta.part[v];
    s.ab_edges += (pu == Part::a && pv == Part::b) || (pu == Part::b && pv == Part::a);
  }
  s.queries = distinct.pairs.size();
  s.beta = beta;
  s.max_outdegree = out.split.orientation.max_outdegree;
  s.degeneracy = degeneracy_order(out.split.graph).degeneracy;
  s.triangles = enum_triangles_cn(out.split.graph).size();
  for (const auto& r : brute_intersection(si.sys, distinct)) s.intersection_total += r.size();
  return out;
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "graph 1\n" << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph read_graph(std::istream& in) {
  using textio::read_number;
  textio::expect_header(in, "graph");
  const auto n = read_number<std::size_t>(in, "n");
  const auto m = read_number<std::size_t>(in, "m");
  std::vector<std::pair<u32, u32>> edges(m);
  for (auto& [u, v] : edges) {
    u = read_number<u32>(in, "edge end");
    v = read_number<u32>(in, "edge end");
  }
  try {
    return Graph::from_edges(n, edges);
  } catch (const ParameterError& e) {
    throw ParseError(e.what());
  }
}

void write_stats_header(std::ostream& out) {
  out << "n,gamma,delta,seed,vertices,edges,ab_edges,queries,beta,max_outdegree,degeneracy,triangles,"
         "intersection_total\n";
}

void write_stats_row(std::ostream& out, const HardStats& s) {
  out << s.n << ',' << s.gamma << ',' << s.delta << ',' << s.seed << ',' << s.vertices << ',' << s.edges << ','
      << s.ab_edges << ',' << s.queries << ',' << s.beta << ',' << s.max_outdegree << ',' << s.degeneracy << ','
      << s.triangles << ',' << s.intersection_total << '\n';
}

}  // namespace tsr
