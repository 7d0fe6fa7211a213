#include "tsr/matching.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>

namespace tsr {

u32 MatchGraph::insert_vertex() {
  const u32 id = static_cast<u32>(adj_.size());
  adj_.emplace_back();
  mate_.push_back(unmatched);
  parent_.push_back(unmatched);
  seen_.push_back(0);
  push({Kind::vertex, id});
  return id;
}

void MatchGraph::push(Record r) {
  log_.push_back(r);
  serials_.push_back(next_serial_++);
}

std::size_t MatchGraph::insert_edge(u32 u, u32 v) {
  if (u >= adj_.size() || v >= adj_.size()) throw ParameterError("edge end is not a vertex");
  if (u == v) throw ParameterError("self-loop");
  if (!edges_.insert(key(u, v)).second) throw ParameterError("edge already present");
  adj_[u].push_back(v);
  adj_[v].push_back(u);
  push({Kind::edge, u, v});
  ++work_;

  std::vector<u32> path;
  if (mate_[u] == unmatched && mate_[v] == unmatched) {
    path = {u, v};
  } else {
    std::vector<u32> half_u, half_v;
    if (!half_path(u, half_u) || !half_path(v, half_v)) return size_;
    const u64 tag = ++epoch_;
    for (u32 w : half_u) seen_[w] = tag;
    for (u32 w : half_v)
      if (seen_[w] == tag) throw InvariantError("augmenting halves share a vertex");
    path.assign(half_u.rbegin(), half_u.rend());
    path.insert(path.end(), half_v.begin(), half_v.end());
  }

  Record r{Kind::augment};
  r.saved_begin = saved_.size();
  r.old_size = size_;
  for (u32 w : path) saved_.emplace_back(w, mate_[w]);
  for (std::size_t k = 0; k + 1 < path.size(); k += 2) {
    mate_[path[k]] = path[k + 1];
    mate_[path[k + 1]] = path[k];
  }
  ++size_;
  push(r);
  return size_;
}

bool MatchGraph::half_path(u32 from, std::vector<u32>& path) {
  path.clear();
  if (mate_[from] == unmatched) {
    path.push_back(from);
    return true;
  }
  const u64 tag = ++epoch_;
  std::deque<u32> queue{from};
  seen_[from] = tag;
  parent_[from] = unmatched;
  while (!queue.empty()) {
    const u32 outer = queue.front();
    queue.pop_front();
    const u32 inner = mate_[outer];
    ++work_;
    if (seen_[inner] == tag) continue;
    seen_[inner] = tag;
    parent_[inner] = outer;
    for (u32 w : adj_[inner]) {
      ++work_;
      if (w == outer || seen_[w] == tag) continue;
      seen_[w] = tag;
      parent_[w] = inner;
      if (mate_[w] == unmatched) {
        for (u32 t = w; t != unmatched; t = parent_[t]) path.push_back(t);
        std::reverse(path.begin(), path.end());
        return true;
      }
      queue.push_back(w);
    }
  }
  return false;
}

void MatchGraph::set_matching(const std::vector<std::pair<u32, u32>>& pairs) {
  std::fill(mate_.begin(), mate_.end(), unmatched);
  size_ = 0;
  for (auto [u, v] : pairs) {
    if (!has_edge(u, v)) throw ParameterError("matching pair is not an edge");
    if (mate_[u] != unmatched || mate_[v] != unmatched) throw ParameterError("matching pairs overlap");
    mate_[u] = v;
    mate_[v] = u;
    ++size_;
  }
}

void MatchGraph::clear_log() {
  log_.clear();
  serials_.clear();
  saved_.clear();
}

MatchGraph::Mark MatchGraph::mark() const noexcept {
  return {log_.size(), serials_.empty() ? 0 : serials_.back()};
}

void MatchGraph::rollback(const Mark& to) {
  const u64 expected = to.position == 0 ? 0 : (to.position <= serials_.size() ? serials_[to.position - 1] : ~u64{0});
  if (to.position > log_.size() || expected != to.serial) throw ParameterError("rollback mark is not on the current history");
  while (log_.size() > to.position) {
    const Record r = log_.back();
    log_.pop_back();
    serials_.pop_back();
    switch (r.kind) {
      case Kind::vertex:
        adj_.pop_back();
        mate_.pop_back();
        parent_.pop_back();
        seen_.pop_back();
        break;
      case Kind::edge:
        adj_[r.u].pop_back();
        adj_[r.v].pop_back();
        edges_.erase(key(r.u, r.v));
        break;
      case Kind::augment:
        for (std::size_t k = saved_.size(); k-- > r.saved_begin;) mate_[saved_[k].first] = saved_[k].second;
        saved_.resize(r.saved_begin);
        size_ = r.old_size;
        break;
    }
  }
}

bool MatchGraph::valid() const {
  std::size_t matched = 0;
  for (u32 v = 0; v < mate_.size(); ++v) {
    const u32 m = mate_[v];
    if (m == unmatched) continue;
    if (m >= mate_.size() || mate_[m] != v || !has_edge(v, m)) return false;
    ++matched;
  }
  return matched == 2 * size_;
}

bool MatchGraph::bipartite() const {
  std::vector<int> color(adj_.size(), -1);
  for (u32 s = 0; s < adj_.size(); ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::vector<u32> stack{s};
    while (!stack.empty()) {
      const u32 v = stack.back();
      stack.pop_back();
      for (u32 w : adj_[v]) {
        if (color[w] == -1) {
          color[w] = 1 - color[v];
          stack.push_back(w);
        } else if (color[w] == color[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

MatchGraph::Snapshot MatchGraph::snapshot() const { return {adj_.size(), adj_, mate_, size_}; }

std::pair<MatchGraph, GadgetMap> build_gadget(const SetSystem& sys) {
  sys.validate();
  MatchGraph g;
  GadgetMap map;
  std::vector<std::pair<u32, u32>> copies;
  auto pair_up = [&](std::vector<u32>& first, std::vector<u32>& second, std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
      first.push_back(g.insert_vertex());
      second.push_back(g.insert_vertex());
      g.insert_edge(first.back(), second.back());
      copies.emplace_back(first.back(), second.back());
    }
  };
  pair_up(map.element_a, map.element_b, sys.universe_size);
  pair_up(map.a_prime, map.a_second, sys.family_a.size());
  pair_up(map.b_prime, map.b_second, sys.family_b.size());
  map.x = g.insert_vertex();
  map.y = g.insert_vertex();
  for (std::size_t a = 0; a < sys.family_a.size(); ++a)
    for (u32 c : sys.family_a[a]) g.insert_edge(map.a_prime[a], map.element_a[c]);
  for (std::size_t b = 0; b < sys.family_b.size(); ++b)
    for (u32 c : sys.family_b[b]) g.insert_edge(map.b_prime[b], map.element_b[c]);
  g.set_matching(copies);
  g.clear_log();
  if (!g.bipartite()) throw InvariantError("gadget graph is not bipartite");
  return {std::move(g), std::move(map)};
}

bool sd_query_rollback(MatchGraph& g, const GadgetMap& map, u32 a, u32 b) {
  const auto m = g.mark();
  const std::size_t before = g.matching_size();
  g.insert_edge(map.x, map.a_second.at(a));
  g.insert_edge(map.y, map.b_second.at(b));
  const bool disjoint = g.matching_size() == before;
  g.rollback(m);
  return disjoint;
}

bool sd_query_perfect(MatchGraph& g, const GadgetMap& map, u32 a, u32 b) {
  const u32 as = map.a_second.at(a), bs = map.b_second.at(b);
  const std::size_t before = g.matching_size();
  const u32 x = g.insert_vertex(), xp = g.insert_vertex();
  const u32 y = g.insert_vertex(), yp = g.insert_vertex();
  g.insert_edge(x, as);
  g.insert_edge(y, bs);
  const bool disjoint = g.matching_size() == before;
  g.insert_edge(x, xp);
  g.insert_edge(y, yp);
  if (g.matching_size() != before + 2) throw InvariantError("perfect-mode query did not grow the matching by 2");
  return disjoint;
}

bool sd_query_combined(MatchGraph& g, const GadgetMap& map, u32 a, u32 b, double alpha) {
  const double threshold = 9.0 * std::pow(static_cast<double>(g.vertex_count()), alpha);
  const auto m = g.mark();
  const u64 work0 = g.work();
  const bool disjoint = sd_query_perfect(g, map, a, b);
  if (static_cast<double>(g.work() - work0) < threshold) g.rollback(m);
  return disjoint;
}

std::vector<QueryRecord> run_gadget_queries(const SetSystem& sys, const QueryBatch& batch, QueryMode mode,
                                            double alpha) {
  batch.validate(sys);
  auto [g, map] = build_gadget(sys);
  std::vector<std::size_t> order(batch.pairs.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return batch.pairs[l].a < batch.pairs[r].a; });

  std::vector<QueryRecord> out;
  out.reserve(order.size());
  for (std::size_t k : order) {
    const auto q = batch.pairs[k];
    QueryRecord rec;
    rec.index = k;
    const std::size_t size0 = g.matching_size();
    const std::size_t vertices0 = g.vertex_count();
    const u64 work0 = g.work();
    switch (mode) {
      case QueryMode::rollback:
        rec.disjoint = sd_query_rollback(g, map, q.a, q.b);
        break;
      case QueryMode::perfect:
        rec.disjoint = sd_query_perfect(g, map, q.a, q.b);
        break;
      case QueryMode::combined:
        rec.disjoint = sd_query_combined(g, map, q.a, q.b, alpha);
        break;
    }
    rec.size_delta = static_cast<long long>(g.matching_size()) - static_cast<long long>(size0);
    rec.work = g.work() - work0;
    rec.vertices = g.vertex_count();
    rec.kept = g.vertex_count() > vertices0;
    out.push_back(rec);
  }
  return out;
}

void write_query_csv(std::ostream& out, const std::vector<QueryRecord>& records) {
  out << "query,disjoint,size_delta,work,vertices\n";
  for (const auto& r : records)
    out << r.index << ',' << (r.disjoint ? 1 : 0) << ',' << r.size_delta << ',' << r.work << ',' << r.vertices
        << '\n';
}

}  // namespace tsr
