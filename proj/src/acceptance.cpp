#include "tsr/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "tsr/cli.hpp"
#include "tsr/conv_reduction.hpp"
#include "tsr/hashing.hpp"
#include "tsr/matching.hpp"
#include "tsr/sd_reduction.hpp"
#include "tsr/setsystem.hpp"
#include "tsr/threesum.hpp"
#include "tsr/triangles.hpp"

namespace tsr {

namespace {

// Tolerances and trial counts; quick mode scales the counts only.
constexpr u64 kUniverse = u64{1} << 20;
constexpr std::size_t kSdInstances = 500;
constexpr std::size_t kSiInstances = 500;
constexpr double kSiReportedSlack = 40;
constexpr double kThm5UniverseSlack = 100;
constexpr double kThm6UniverseSlack = 4;
constexpr std::size_t kFalsePositivePairs = 1000;
constexpr double kFalsePositiveRate = 0.5;
constexpr std::size_t kHashFunctions = 100;
constexpr std::size_t kHashPairs = 10000;
constexpr std::size_t kConvInstances = 50;
constexpr std::size_t kConvEllsPerInstance = 200;
constexpr std::size_t kConvPlanted = 100;
constexpr std::size_t kConvEndToEnd = 50;
constexpr std::size_t kGraphs = 300;
constexpr u64 kCnConstant = 8;
constexpr std::size_t kSplitGraphs = 100;
constexpr std::size_t kMatchSystems = 200;
constexpr std::size_t kMatchGraphs = 200;
constexpr std::size_t kHeavyLightQueries = 10000;
constexpr double kHeavyLightConstant = 16;

struct Ctx {
  bool quick = false;
  std::size_t scale(std::size_t full, std::size_t quick_count) const { return quick ? quick_count : full; }
};

class Checker {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && first_failure_.empty()) first_failure_ = what;
    failures_ += !ok;
  }
  bool ok() const noexcept { return failures_ == 0; }
  std::size_t failures() const noexcept { return failures_; }
  const std::string& first_failure() const noexcept { return first_failure_; }

 private:
  std::size_t failures_ = 0;
  std::string first_failure_;
};

std::string describe(const Checker& c, const std::string& summary) {
  if (c.ok()) return summary;
  return summary + "; " + std::to_string(c.failures()) + " violations, first: " + c.first_failure();
}

const std::size_t kSizes[] = {64, 128, 256, 512};
const double kGammas[] = {0.25, 0.5, 0.75};
const double kDeltas[] = {0.25, 0.5};
const Plant kPlants[] = {Plant::none, Plant::witness, Plant::sumfree};

ThreeSumInstance grid_instance(std::size_t k, const char* label, std::size_t n) {
  Rng rng = Rng::stream(k, label);
  return gen_instance(n, kUniverse, kPlants[(k / 12) % 3], rng);
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

// ---------------------------------------------------------------------------

CriterionResult c1_sd_oracle(const Ctx& ctx) {
  CriterionResult r{1, "sd-oracle", false, {}, 0};
  Checker check;
  auto brute = make_backend("brute");
  auto heavy = make_backend("heavylight");
  const std::size_t count = ctx.scale(kSdInstances, 48);
  std::size_t agree = 0, witnesses = 0, cross = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t n = kSizes[k % 4];
    const double gamma = kGammas[(k / 4) % 3];
    const auto inst = grid_instance(k, "accept.sd", n);
    const bool truth = solve_3sum_bruteforce(inst).has_value();
    const auto w = solve_3sum_via_sd(inst, gamma, *brute, k);
    agree += w.has_value() == truth;
    check.require(w.has_value() == truth, "decision differs at instance " + std::to_string(k));
    if (w) {
      ++witnesses;
      check.require(is_valid_witness(inst, *w), "invalid witness at instance " + std::to_string(k));
    }
    if (k % 10 == 0 && n <= 256) {
      ++cross;
      const auto wh = solve_3sum_via_sd(inst, gamma, *heavy, k);
      check.require(wh.has_value() == w.has_value(), "backends disagree at instance " + std::to_string(k));
    }
  }
  r.pass = check.ok();
  r.detail = describe(check, std::to_string(agree) + "/" + std::to_string(count) + " agree, " +
                                 std::to_string(witnesses) + " witnesses validated, " + std::to_string(cross) +
                                 " heavy/light cross-checks");
  return r;
}

CriterionResult c2_si_oracle(const Ctx& ctx) {
  CriterionResult r{2, "si-oracle", false, {}, 0};
  Checker check;
  auto brute = make_backend("brute");
  const std::size_t count = ctx.scale(kSiInstances, 48);
  std::size_t agree = 0;
  std::map<std::tuple<std::size_t, double, double>, std::pair<double, std::size_t>> reported;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t n = kSizes[k % 4];
    const double gamma = kGammas[(k / 4) % 3];
    const double delta = kDeltas[(k / 36) % 2];
    const auto inst = grid_instance(k, "accept.si", n);
    const bool truth = solve_3sum_bruteforce(inst).has_value();
    SDRunStats st;
    const auto w = solve_3sum_via_si(inst, gamma, delta, *brute, k, &st);
    agree += w.has_value() == truth;
    check.require(w.has_value() == truth, "decision differs at instance " + std::to_string(k));
    if (w) check.require(is_valid_witness(inst, *w), "invalid witness at instance " + std::to_string(k));
    // The reported total is only complete when the pipeline ran the backend.
    if (st.queries > 0 && (st.heavy == 0 || !w)) {
      auto& cell = reported[{n, gamma, delta}];
      cell.first += static_cast<double>(st.reported);
      ++cell.second;
    }
  }
  double worst = 0;
  for (const auto& [key, cell] : reported) {
    const auto [n, gamma, delta] = key;
    const double mean = cell.first / static_cast<double>(cell.second);
    const double bound = kSiReportedSlack * std::pow(static_cast<double>(n), 2 - delta);
    worst = std::max(worst, mean / bound);
    check.require(mean <= bound, "mean reported " + fmt(mean) + " > " + fmt(bound) + " at n=" + std::to_string(n));
  }
  r.pass = check.ok();
  r.detail = describe(check, std::to_string(agree) + "/" + std::to_string(count) +
                                 " agree, worst mean reported / (40 n^(2-delta)) = " + fmt(worst));
  return r;
}

CriterionResult c3_structure(const Ctx& ctx) {
  CriterionResult r{3, "sd-si-structure", false, {}, 0};
  Checker check;
  const std::size_t seeds = ctx.scale(3, 1);
  std::size_t built = 0;
  for (std::size_t n : kSizes) {
    for (double gamma : kGammas) {
      for (std::size_t s = 0; s < seeds; ++s) {
        const auto inst = grid_instance(s, "accept.structure", n);
        const std::string at = " (n=" + std::to_string(n) + " gamma=" + fmt(gamma) + ")";
        auto common = [&](const SDInstance& sd, std::size_t rounds) {
          const auto& p = sd.plan;
          const std::size_t family = p.R * p.sqrt_q * rounds;
          check.require(sd.sys.family_a.size() == family && sd.sys.family_b.size() == family,
                        "family size != R sqrt(Q) rounds" + at);
          check.require(sd.sys.universe_size == p.Q, "universe != Q" + at);
          for (const auto* fam : {&sd.sys.family_a, &sd.sys.family_b})
            for (const auto& set : *fam)
              check.require(set.size() * p.R <= 3 * n, "set larger than 3n/R" + at);
          check.require(sd.batch.pairs.size() <= 4 * n * p.R * rounds, "more than 4 n R rounds queries" + at);
          ++built;
        };
        const SDInstance sd = build_sd_instance(inst, gamma, s);
        common(sd, sd_round_count(n));
        check.require(static_cast<double>(sd.plan.Q) <=
                          kThm5UniverseSlack * std::pow(static_cast<double>(n), 2 - 2 * gamma),
                      "Q > 100 n^(2-2gamma)" + at);
        for (double delta : kDeltas) {
          const SDInstance si = build_si_instance(inst, gamma, delta, s);
          common(si, 1);
          check.require(static_cast<double>(si.plan.Q) <=
                            kThm6UniverseSlack * std::pow(static_cast<double>(n), 1 + delta - gamma),
                        "Q > 4 n^(1+delta-gamma)" + at);
        }
      }
    }
  }
  r.pass = check.ok();
  r.detail = describe(check, std::to_string(built) + " instances, all shape assertions exact");
  return r;
}

CriterionResult c4_false_positives(const Ctx& ctx) {
  CriterionResult r{4, "sd-false-positives", false, {}, 0};
  Checker check;
  std::size_t disjoint_pairs = 0, hits = 0;
  const std::size_t target = ctx.scale(kFalsePositivePairs * 20, kFalsePositivePairs);
  for (std::size_t k = 0; disjoint_pairs < target && k < 64; ++k) {
    const std::size_t n = kSizes[k % 3];
    const double gamma = kGammas[(k / 3) % 3];
    const auto inst = grid_instance(k, "accept.fp", n);
    const SDInstance sd = build_sd_instance(inst, gamma, k);
    const auto answers = brute_disjointness(sd.sys, sd.batch);
    for (std::size_t q = 0; q < sd.batch.pairs.size(); ++q) {
      const QueryOrigin& o = sd.plan.origins[q];
      const auto& down = sd.plan.down.buckets[o.j];
      bool truth_meets = false;
      for (u64 x : sd.plan.up.buckets[o.i]) {
        if (x > o.z && std::find(down.begin(), down.end(), x - o.z) != down.end()) {
          truth_meets = true;
          break;
        }
      }
      if (truth_meets) continue;
      ++disjoint_pairs;
      hits += !answers[q];
    }
  }
  const double rate = disjoint_pairs ? static_cast<double>(hits) / static_cast<double>(disjoint_pairs) : 1.0;
  check.require(disjoint_pairs >= kFalsePositivePairs, "too few ground-truth-disjoint pairs");
  check.require(rate <= kFalsePositiveRate, "false-positive rate " + fmt(rate) + " > 0.5");
  r.pass = check.ok();
  r.detail = describe(check, "rate " + fmt(rate) + " over " + std::to_string(disjoint_pairs) +
                                 " ground-truth-disjoint pairs (bound 0.5)");
  return r;
}

CriterionResult c5_hashing(const Ctx& ctx) {
  CriterionResult r{5, "hashing", false, {}, 0};
  Checker check;

  // Exhaustive pairwise independence at u=8, m=2, r=16.
  std::size_t cells = 0, exact = 0;
  for (u64 x = 0; x < 8; ++x) {
    for (u64 y = 0; y < 8; ++y) {
      if (x == y) continue;
      std::size_t count[2][2] = {};
      for (u64 a = 1; a < 16; a += 2)
        for (u64 b = 0; b < 16; ++b) {
          const PairwiseAffineHash h{a, b, 8, 2, 16};
          ++count[h(x)][h(y)];
        }
      for (auto& row : count)
        for (std::size_t c : row) {
          ++cells;
          exact += c == 32;
        }
    }
  }
  check.require(exact == cells, "pairwise count cell != 32");

  // Almost linearity at u = 2^16, m = 2^8, r = (u/2) m.
  const u64 u = u64{1} << 16, m = u64{1} << 8;
  const std::size_t functions = ctx.scale(kHashFunctions, 20);
  const std::size_t pairs = ctx.scale(kHashPairs, 2000);
  std::size_t violations = 0, window_misses = 0, companion_misses = 0, total = 0;
  std::size_t functions_violating = 0;
  for (std::size_t f = 0; f < functions; ++f) {
    Rng rng = Rng::stream(f, "accept.hash");
    const auto h = sample_pairwise(rng, u, m, min_pairwise_modulus(u, m));
    const auto hc = companion(h);
    const u64 c = linear_offset(h);
    const auto window = offset_window(h);
    bool any = false;
    for (std::size_t t = 0; t < pairs; ++t) {
      const u64 x = rng.below(u);
      const u64 y = rng.below(u - x);
      const u64 d = (h(x) + h(y) + m - h(x + y)) % m;
      ++total;
      const bool in_pair = d == c || d == (c + 1) % m;
      violations += !in_pair;
      any |= !in_pair;
      window_misses += std::find(window.begin(), window.end(), d) == window.end();
      const u64 e = (hc(x + y) + 2 * m - h(x) - h(y)) % m;
      companion_misses += e > 1;
    }
    functions_violating += any;
  }
  check.require(violations == 0, "offset outside {c_h, c_h+1} for " + std::to_string(violations) + " of " +
                                     std::to_string(total) + " pairs (" + std::to_string(functions_violating) +
                                     "/" + std::to_string(functions) + " functions)");
  check.require(window_misses == 0, "offset outside offset_window");
  check.require(companion_misses == 0, "companion relation violated");
  r.pass = check.ok();
  r.detail = describe(check, "pairwise " + std::to_string(exact) + "/" + std::to_string(cells) +
                                 " cells exact; {c_h,c_h+1} violations " + std::to_string(violations) + "/" +
                                 std::to_string(total) + "; three-valued window misses " +
                                 std::to_string(window_misses) + "; companion misses " +
                                 std::to_string(companion_misses));
  return r;
}

// All distinct-index Conv3SUM witnesses of a vector.
std::vector<WitnessConv> all_conv_witnesses(const ConvInstance& v) {
  std::vector<std::size_t> filled;
  for (std::size_t k = 0; k < v.length(); ++k)
    if (!v.is_hole(k)) filled.push_back(k);
  std::vector<WitnessConv> out;
  for (std::size_t p : filled)
    for (std::size_t q : filled) {
      if (p + q >= v.length()) break;
      if (p != q && !v.is_hole(p + q) && v.cells[p] + v.cells[q] == v.cells[p + q]) out.push_back({p, q});
    }
  return out;
}

// Values v and 2v side by side, plus planted sums: crowded with (a, a, 2a) bait.
ThreeSumInstance doubling_instance(std::size_t n, Rng& rng) {
  std::unordered_set<u64> chosen;
  std::vector<u64> values;
  while (values.size() + 2 <= n) {
    const u64 v = rng.between(1, 4095);
    if (chosen.count(v) || chosen.count(2 * v)) continue;
    chosen.insert(v);
    chosen.insert(2 * v);
    values.push_back(v);
    values.push_back(2 * v);
  }
  return ThreeSumInstance(values, 1 << 13);
}

CriterionResult c6_conv(const Ctx& ctx) {
  CriterionResult r{6, "conv-reduction", false, {}, 0};
  Checker check;
  const std::size_t n_sizes[] = {8, 16, 32, 64};

  // (a) + (b): sampled ells, every distinct-index witness must map.
  const std::size_t instances = ctx.scale(kConvInstances, 10);
  const std::size_t ells = ctx.scale(kConvEllsPerInstance, 60);
  std::size_t witnesses_seen = 0, vectors = 0, self_pairs = 0;
  for (std::size_t k = 0; k < instances; ++k) {
    Rng rng = Rng::stream(k, "accept.conv.b");
    const std::size_t n = n_sizes[k % 4];
    const ThreeSumInstance inst =
        k % 2 ? doubling_instance(n, rng) : strip_zero(gen_instance(n, 1 << 12, Plant::witness, rng));
    const ConvPlan plan = plan_conv(inst, {}, rng);
    check.require(plan.instance_count() == 8 * plan.T * plan.L, "instance count != 8TL");
    std::vector<std::size_t> picks;
    for (std::size_t t = 0; t < ells; ++t) picks.push_back(rng.below(plan.instance_count()));
    ConvInstance vec;
    for (std::size_t index : picks) {
      const EllIndex ell = plan.ell_at(index);
      build_vector_into(plan, ell, vec);
      ++vectors;
      check.require(vec.length() == 14 * plan.T * plan.m, "vector length != 14Tm");
      for (const auto& wc : all_conv_witnesses(vec)) {
        ++witnesses_seen;
        try {
          const Witness3 w = map_witness(plan, ell, wc, vec);
          check.require(is_valid_witness(inst, w), "mapped triple is not a witness");
        } catch (const InvariantError& e) {
          check.require(false, std::string("false positive: ") + e.what());
        }
      }
      if (auto self = solve_conv_sparse(vec, IndexRule::allow_equal); self && self->i == self->j) ++self_pairs;
    }
  }

  // (c) planted witnesses are predicted and sit where predicted.
  const std::size_t planted = ctx.scale(kConvPlanted, 20);
  std::size_t predicted = 0;
  for (std::size_t k = 0; k < planted; ++k) {
    Rng rng = Rng::stream(k, "accept.conv.c");
    const std::size_t n = n_sizes[k % 4];
    const ThreeSumInstance inst = strip_zero(gen_instance(n, 1 << 12, Plant::witness, rng));
    const auto w = solve_3sum_bruteforce(inst);
    if (!w) {
      check.require(false, "planted instance without witness");
      continue;
    }
    const ConvPlan plan = plan_conv(inst, {}, rng);
    const auto p = predict_ell(plan, *w);
    if (!p) {
      check.require(false, "predict_ell found no index");
      continue;
    }
    const ConvInstance vec = build_vector(plan, p->ell);
    const bool at = p->p_a + p->p_b == p->p_c && p->p_c < vec.length() && vec.cells[p->p_a] == w->x &&
                    vec.cells[p->p_b] == w->y && vec.cells[p->p_c] == w->z;
    check.require(at, "witness not at predicted positions (instance " + std::to_string(k) + ")");
    predicted += at;
  }

  // (d) end to end.
  const std::size_t e2e = ctx.scale(kConvEndToEnd, 6);
  std::size_t agree = 0;
  for (std::size_t k = 0; k < e2e; ++k) {
    Rng rng = Rng::stream(k, "accept.conv.d");
    const std::size_t n = k % 2 ? 16 : 8 + k % 8;
    const ThreeSumInstance inst = gen_instance(n, 1 << 10, k % 3 == 0 ? Plant::witness : Plant::none, rng);
    const bool truth = solve_3sum_bruteforce(inst).has_value();
    ConvRunStats st;
    const auto w = solve_3sum_via_conv(inst, default_conv_solver(), {}, rng, &st);
    const bool ok = w.has_value() == truth && (!w || is_valid_witness(inst, *w)) &&
                    (w || inst.contains(0) || st.calls == 8 * st.T * st.L);
    check.require(ok, "end-to-end mismatch at instance " + std::to_string(k));
    agree += ok;
  }

  r.pass = check.ok();
  r.detail = describe(check, std::to_string(vectors) + " vectors, " + std::to_string(witnesses_seen) +
                                 " distinct-index witnesses all mapped (" + std::to_string(self_pairs) +
                                 " vectors had an i=j pattern); predicted " + std::to_string(predicted) + "/" +
                                 std::to_string(planted) + "; end-to-end " + std::to_string(agree) + "/" +
                                 std::to_string(e2e));
  return r;
}

Graph random_graph(Rng& rng, std::size_t n, double p) {
  std::vector<std::pair<u32, u32>> edges;
  for (u32 u = 0; u < n; ++u)
    for (u32 v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

CriterionResult c7_triangles(const Ctx& ctx) {
  CriterionResult r{7, "triangles", false, {}, 0};
  Checker check;
  const std::size_t graphs = ctx.scale(kGraphs, 60);
  for (std::size_t k = 0; k < graphs; ++k) {
    Rng rng = Rng::stream(k, "accept.graph");
    const std::size_t n = rng.between(3, 80);
    const double p = 0.05 + 0.45 * rng.uniform();
    const Graph g = random_graph(rng, n, p);
    OpCounter work;
    const auto cn = enum_triangles_cn(g, &work);
    check.require(cn == enum_triangles_brute(g), "enumerators differ on graph " + std::to_string(k));
    const std::size_t d = degeneracy_order(g).degeneracy;
    check.require(work.ops <= kCnConstant * (g.edge_count() * (d + 1) + n), "counter bound exceeded");
  }

  std::size_t hard = 0;
  for (std::size_t n : {32, 64, 128}) {
    for (double gamma : {0.25, 0.5}) {
      for (double delta : kDeltas) {
        if (ctx.quick && n == 128) continue;
        const u64 seed = hard++;
        const HardInstance h = hard_instance(n, gamma, delta, seed);
        const std::string at = " (n=" + std::to_string(n) + ")";
        check.require(h.stats.triangles == h.stats.intersection_total, "triangles != sum |a n b|" + at);
        check.require(h.stats.ab_edges == h.stats.queries, "A-B edges != |batch|" + at);
        check.require(h.stats.max_outdegree <= 2 * h.stats.beta, "max out-degree > 2 ceil(3n/R)" + at);
      }
    }
  }

  const std::size_t splits = ctx.scale(kSplitGraphs, 20);
  for (std::size_t k = 0; k < splits; ++k) {
    Rng rng = Rng::stream(k, "accept.split");
    const SetSystem sys = random_set_system(rng, rng.between(2, 12), rng.between(1, 6), rng.between(1, 6), 0.4);
    const QueryBatch batch = random_batch(rng, sys, rng.between(1, 20));
    const auto [g, meta] = si_to_graph(sys, batch);
    const std::size_t beta = rng.between(1, 3);
    const SplitGraph s = split_and_orient(g, meta, beta);
    const auto before = enum_triangles_brute(g);
    const auto after = enum_triangles_brute(s.graph);
    check.require(before.size() == after.size(), "split changed the triangle count");
    std::set<Triangle> images;
    for (const auto& t : after) {
      Triangle o{s.meta.original[t[0]], s.meta.original[t[1]], s.meta.original[t[2]]};
      std::sort(o.begin(), o.end());
      images.insert(o);
      check.require(std::binary_search(before.begin(), before.end(), o), "split triangle has no preimage");
    }
    check.require(images.size() == after.size(), "split triangle map not injective");
    for (u32 v = 0; v < s.graph.vertex_count(); ++v) {
      std::size_t cdeg = 0;
      const u32 orig = s.meta.original[v];
      for (u32 w : g.neighbors(orig)) cdeg += meta.part[w] == Part::c;
      const std::size_t bound = s.meta.part[v] == Part::a ? beta + cdeg : cdeg;
      check.require(s.orientation.out[v].size() <= bound, "per-vertex out-degree bound");
    }
  }
  r.pass = check.ok();
  r.detail = describe(check, std::to_string(graphs) + " random graphs, " + std::to_string(hard) +
                                 " hard instances, " + std::to_string(splits) + " split checks");
  return r;
}

// Kuhn's algorithm on the final graph: the offline oracle.
std::size_t offline_matching(std::size_t left, std::size_t right, const std::vector<std::pair<u32, u32>>& edges) {
  std::vector<std::vector<u32>> adj(left);
  for (auto [u, v] : edges) adj[u].push_back(v);
  std::vector<int> match_right(right, -1);
  std::size_t size = 0;
  for (u32 u = 0; u < left; ++u) {
    std::vector<bool> seen(right, false);
    std::function<bool(u32)> try_kuhn = [&](u32 x) {
      for (u32 y : adj[x]) {
        if (seen[y]) continue;
        seen[y] = true;
        if (match_right[y] < 0 || try_kuhn(static_cast<u32>(match_right[y]))) {
          match_right[y] = static_cast<int>(x);
          return true;
        }
      }
      return false;
    };
    size += try_kuhn(u);
  }
  return size;
}

CriterionResult c8_matching(const Ctx& ctx) {
  CriterionResult r{8, "matching", false, {}, 0};
  Checker check;
  const std::size_t systems = ctx.scale(kMatchSystems, 40);
  std::size_t queries = 0;
  for (std::size_t k = 0; k < systems; ++k) {
    Rng rng = Rng::stream(k, "accept.match");
    const SetSystem sys =
        random_set_system(rng, rng.between(1, 32), rng.between(1, 16), rng.between(1, 16), 0.05 + 0.2 * rng.uniform());
    const QueryBatch batch = random_batch(rng, sys, 24);
    const auto truth = brute_disjointness(sys, batch);
    queries += batch.pairs.size();
    for (QueryMode mode : {QueryMode::rollback, QueryMode::perfect, QueryMode::combined}) {
      const double alpha = k % 3 == 0 ? 0.0 : (k % 3 == 1 ? 0.5 : 10.0);
      const auto recs = run_gadget_queries(sys, batch, mode, alpha);
      for (const auto& rec : recs) {
        check.require(rec.disjoint == truth[rec.index], "gadget answer differs from brute");
        if (mode == QueryMode::perfect) check.require(rec.size_delta == 2, "perfect-mode delta != +2");
      }
    }
    // Rollback exactness against snapshots.
    auto [g, map] = build_gadget(sys);
    const auto snap = g.snapshot();
    const auto outer = g.mark();
    sd_query_perfect(g, map, batch.pairs[0].a, batch.pairs[0].b);
    const auto mid_snap = g.snapshot();
    const auto inner = g.mark();
    sd_query_rollback(g, map, batch.pairs[1].a, batch.pairs[1].b);
    sd_query_perfect(g, map, batch.pairs[1].a, batch.pairs[1].b);
    g.rollback(inner);
    check.require(g.snapshot() == mid_snap, "inner rollback not exact");
    g.rollback(outer);
    check.require(g.snapshot() == snap, "outer rollback not exact");
    check.require(g.valid(), "matching invalid after rollback");
  }

  const std::size_t graphs = ctx.scale(kMatchGraphs, 40);
  for (std::size_t k = 0; k < graphs; ++k) {
    Rng rng = Rng::stream(k, "accept.bipartite");
    const std::size_t left = rng.between(1, 20), right = rng.between(1, 20);
    const double p = 0.05 + 0.4 * rng.uniform();
    std::vector<std::pair<u32, u32>> edges;
    for (u32 u = 0; u < left; ++u)
      for (u32 v = 0; v < right; ++v)
        if (rng.bernoulli(p)) edges.emplace_back(u, v);
    for (std::size_t i = edges.size(); i > 1; --i) std::swap(edges[i - 1], edges[rng.below(i)]);
    MatchGraph g;
    for (std::size_t v = 0; v < left + right; ++v) g.insert_vertex();
    for (auto [u, v] : edges) {
      g.insert_edge(u, static_cast<u32>(left + v));
      if (!g.valid()) break;
    }
    check.require(g.valid(), "matching invalid during insertions");
    check.require(g.matching_size() == offline_matching(left, right, edges),
                  "incremental size != offline maximum on graph " + std::to_string(k));
  }
  r.pass = check.ok();
  r.detail = describe(check, std::to_string(systems) + " systems x 3 modes (" + std::to_string(queries) +
                                 " queries), " + std::to_string(graphs) + " incremental graphs");
  return r;
}

CriterionResult c9_heavylight(const Ctx& ctx) {
  CriterionResult r{9, "heavy-light", false, {}, 0};
  Checker check;
  const std::size_t total_queries = ctx.scale(kHeavyLightQueries, 2000);
  std::size_t done = 0, systems = 0, heavy_sets = 0;
  double worst_pre = 0, worst_query = 0;
  while (done < total_queries) {
    Rng rng = Rng::stream(systems++, "accept.heavylight");
    // A few large sets among many small ones, so both branches run.
    SetSystem sys = random_set_system(rng, rng.between(64, 512), rng.between(4, 40), rng.between(4, 40), 0.02);
    for (std::size_t t = 0; t < 3; ++t) {
      auto& target = t % 2 ? sys.family_a : sys.family_b;
      auto& set = target[rng.below(target.size())];
      set.clear();
      for (u32 e = 0; e < sys.universe_size; ++e)
        if (rng.bernoulli(0.6)) set.push_back(e);
    }
    const QueryBatch batch = random_batch(rng, sys, 1000);
    const auto truth = brute_disjointness(sys, batch);
    OpCounter pre;
    const HeavyLightStructure s = build_heavylight(sys, &pre);
    heavy_sets += s.heavy_count();
    const double N = static_cast<double>(s.total_size());
    worst_pre = std::max(worst_pre, static_cast<double>(pre.ops) / std::max(1.0, std::pow(N, 1.5)));
    check.require(static_cast<double>(pre.ops) <= kHeavyLightConstant * std::pow(N, 1.5),
                  "preprocessing work above 16 N^1.5");
    for (std::size_t q = 0; q < batch.pairs.size(); ++q) {
      OpCounter work;
      const bool d = query_heavylight(s, batch.pairs[q].a, batch.pairs[q].b, &work);
      check.require(d == truth[q], "heavy/light answer differs from brute");
      worst_query = std::max(worst_query, static_cast<double>(work.ops) / std::max(1.0, std::sqrt(N)));
      check.require(static_cast<double>(work.ops) <= kHeavyLightConstant * std::sqrt(N), "query work above 16 sqrt N");
    }
    done += batch.pairs.size();
  }
  r.pass = check.ok();
  r.detail = describe(check, std::to_string(done) + " queries over " + std::to_string(systems) + " systems (" +
                                 std::to_string(heavy_sets) + " heavy sets); max pre/N^1.5 = " + fmt(worst_pre) +
                                 ", max query/sqrt N = " + fmt(worst_query));
  return r;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

CriterionResult c10_determinism(const Ctx& ctx) {
  CriterionResult r{10, "cli-determinism", false, {}, 0};
  Checker check;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("tsr-accept-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string f3 = (dir / "i.3sum").string(), fs_ = (dir / "s.setsys").string();
  const std::string fg = (dir / "g.graph").string();

  // Inputs for the commands that read files.
  std::ostringstream sink;
  run_cli({"gen", "3sum", "--n", "48", "--u", "4096", "--plant", "witness", "--seed", "5", "--out", f3}, sink, sink);
  run_cli({"gen", "setsys", "--n", "16", "--gamma", "0.5", "--seed", "5", "--out", fs_}, sink, sink);
  run_cli({"gen", "graph", "--n", "16", "--gamma", "0.5", "--delta", "0.5", "--seed", "5", "--out", fg}, sink, sink);

  using Args = std::vector<std::string>;
  std::vector<Args> commands = {
      {"gen", "3sum", "--n", "64", "--seed", "7"},
      {"gen", "3sum", "--n", "64", "--plant", "sumfree", "--seed", "7"},
      {"gen", "conv", "--n", "8", "--u", "1024", "--seed", "7", "--ell", "123"},
      {"gen", "setsys", "--n", "32", "--gamma", "0.5", "--seed", "7"},
      {"gen", "setsys", "--n", "32", "--gamma", "0.5", "--delta", "0.5", "--via", "si", "--seed", "7"},
      {"gen", "graph", "--n", "32", "--gamma", "0.5", "--delta", "0.5", "--seed", "7"},
      {"solve", "--in", f3, "--via", "sd", "--check", "--seed", "7"},
      {"solve", "--in", f3, "--via", "si", "--backend", "heavylight", "--check", "--seed", "7"},
      {"solve", "--in", f3, "--via", "brute", "--format", "csv"},
      {"bench", "--task", "sd", "--n", "64", "--trials", "3", "--seed", "7", "--no-timing"},
      {"bench", "--task", "triangles", "--n", "32", "--trials", "2", "--seed", "7", "--no-timing"},
      {"bench", "--task", "matching", "--n", "24", "--trials", "2", "--seed", "7", "--no-timing"},
      {"match", "--in", fs_, "--mode", "combined", "--alpha", "0.5"},
      {"triangles", "--in", fg},
      {"triangles", "--n", "32", "--gamma", "0.5", "--delta", "0.5", "--seed", "7"},
      {"reduce", "--in", f3, "--via", "sd", "--gamma", "0.5", "--seed", "7"},
  };
  if (!ctx.quick) {
    commands.push_back({"solve", "--in", f3, "--via", "conv", "--check", "--seed", "7"});
    commands.push_back({"bench", "--task", "conv", "--n", "12", "--u", "1024", "--trials", "2", "--seed", "7",
                        "--no-timing"});
  }

  std::size_t compared = 0;
  for (const auto& args : commands) {
    std::string outputs[2];
    int codes[2];
    for (int run = 0; run < 2; ++run) {
      std::ostringstream out, err;
      codes[run] = run_cli(args, out, err);
      outputs[run] = out.str() + "\x1f" + err.str();
    }
    std::string line;
    for (const auto& a : args) line += a + " ";
    check.require(codes[0] == codes[1] && outputs[0] == outputs[1], "output differs: " + line);
    check.require(codes[0] == kExitOk, "nonzero exit: " + line);
    ++compared;
  }
  // File outputs: --out written twice must match byte for byte.
  for (const char* kind : {"3sum", "setsys", "graph"}) {
    const fs::path a = dir / "a.out", b = dir / "b.out";
    run_cli({"gen", kind, "--n", "24", "--seed", "9", "--out", a.string()}, sink, sink);
    run_cli({"gen", kind, "--n", "24", "--seed", "9", "--out", b.string()}, sink, sink);
    check.require(read_file(a) == read_file(b) && !read_file(a).empty(), std::string("file output differs: ") + kind);
    ++compared;
  }
  fs::remove_all(dir);
  r.pass = check.ok();
  r.detail = describe(check, std::to_string(compared) + " commands byte-identical across two runs");
  return r;
}

bool selected(const AcceptanceOptions& o, int id) {
  if (!o.only.empty() && std::find(o.only.begin(), o.only.end(), id) == o.only.end()) return false;
  return std::find(o.skip.begin(), o.skip.end(), id) == o.skip.end();
}

}  // namespace

void print_result(std::ostream& out, const CriterionResult& r) {
  std::ostringstream secs;
  secs.setf(std::ios::fixed);
  secs.precision(1);
  secs << r.seconds;
  out << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << " " << r.name << ": " << r.detail << " ["
      << secs.str() << " s]" << std::endl;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::ostream& out) {
  const Ctx ctx{options.quick};
  const std::function<CriterionResult(const Ctx&)> all[kCriterionCount] = {
      c1_sd_oracle, c2_si_oracle, c3_structure,  c4_false_positives, c5_hashing,
      c6_conv,      c7_triangles, c8_matching,   c9_heavylight,      c10_determinism,
  };
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (!selected(options, id)) continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = all[id - 1](ctx);
    } catch (const std::exception& e) {
      r.id = id;
      r.name = "criterion";
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    print_result(out, r);
    results.push_back(r);
  }
  return results;
}

}  // namespace tsr
