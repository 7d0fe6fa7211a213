#include "tsr/sd_reduction.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace tsr {

namespace {

PairwiseAffineHash sample_for_range(Rng& rng, u64 u, u64 range) {
  if (log2_exact(std::max<u64>(u / 2, 1)) + log2_exact(range) > 63)
    throw ParameterError("hash modulus (u/2) * range does not fit in 64 bits");
  return sample_pairwise(rng, u, range, min_pairwise_modulus(u, range));
}

void remove_from(BucketTable& table, const PairwiseAffineHash& h, const std::vector<u64>& heavy) {
  for (u64 e : heavy) {
    auto& bucket = table.buckets[h(e)];
    bucket.erase(std::remove(bucket.begin(), bucket.end(), e), bucket.end());
  }
}

std::vector<u32> sorted_set(std::vector<u32> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// {v + d mod Q : v in sorted}, still sorted: a rotation of the shifted list.
std::vector<u32> shifted(const std::vector<u32>& sorted, u64 d, u64 Q) {
  std::vector<u32> out;
  out.reserve(sorted.size());
  const auto wrap = std::lower_bound(sorted.begin(), sorted.end(), static_cast<u32>(Q - d));
  for (auto it = wrap; it != sorted.end(); ++it) out.push_back(static_cast<u32>(*it + d - Q));
  for (auto it = sorted.begin(); it != wrap; ++it) out.push_back(static_cast<u32>(*it + d));
  return out;
}

SDInstance build_instance(const ThreeSumInstance& inst, double gamma, double delta, u64 seed,
                          SetQueryKind kind) {
  if (inst.contains(0)) throw ParameterError("set-query reduction needs 0 removed from the instance");
  const bool si = kind == SetQueryKind::intersection;
  if (si ? !(gamma >= 0 && gamma < 1) : !(gamma > 0 && gamma < 1))
    throw ParameterError("gamma out of range");
  if (si && !(delta > 0)) throw ParameterError("delta must be positive");

  SDInstance out;
  SDPlan& plan = out.plan;
  plan.kind = kind;
  plan.n = inst.size();
  plan.gamma = gamma;
  plan.delta = si ? delta : 0;
  plan.R = bucket_count(plan.n, gamma);
  plan.Q = si ? si_universe(plan.n, plan.R, delta) : sd_universe(plan.n, plan.R);
  if (plan.Q > (u64{1} << 30)) throw ParameterError("set universe Q too large");
  plan.sqrt_q = isqrt_pow4(plan.Q);
  const std::size_t rounds = si ? 1 : sd_round_count(plan.n);
  const u64 u = std::max<u64>(inst.universe(), 2);

  Rng h1_rng = Rng::stream(seed, "sd.h1");
  plan.h1 = sample_for_range(h1_rng, u, plan.R);
  plan.h1_sum = companion(plan.h1);
  for (std::size_t t = 0; t < rounds; ++t) {
    Rng rng = Rng::stream(seed, "sd.h2", t);
    plan.rounds.push_back(sample_for_range(rng, u, plan.Q));
    plan.rounds_sum.push_back(companion(plan.rounds.back()));
  }

  // Heavy under either bucketing function: removed from both tables.
  plan.heavy_threshold = HeavyThreshold::balanced(plan.n, plan.R);
  plan.up = bucketize(plan.h1_sum, inst.values(), plan.heavy_threshold);
  plan.down = bucketize(plan.h1, inst.values(), plan.heavy_threshold);
  plan.heavy = plan.up.heavy_elements;
  plan.heavy.insert(plan.heavy.end(), plan.down.heavy_elements.begin(), plan.down.heavy_elements.end());
  std::sort(plan.heavy.begin(), plan.heavy.end());
  plan.heavy.erase(std::unique(plan.heavy.begin(), plan.heavy.end()), plan.heavy.end());
  remove_from(plan.up, plan.h1_sum, plan.heavy);
  remove_from(plan.down, plan.h1, plan.heavy);
  std::set_difference(inst.values().begin(), inst.values().end(), plan.heavy.begin(), plan.heavy.end(),
                      std::back_inserter(plan.light));

  SetSystem& sys = out.sys;
  sys.universe_size = plan.Q;
  const std::size_t family_size = plan.R * plan.sqrt_q * rounds;
  sys.family_a.resize(family_size);
  sys.family_b.resize(family_size);
  for (std::size_t t = 0; t < rounds; ++t) {
    const auto& h2 = plan.rounds[t];
    const auto& h2s = plan.rounds_sum[t];
    for (u64 i = 0; i < plan.R; ++i) {
      std::vector<u32> up, down;
      for (u64 x : plan.up.buckets[i]) up.push_back(static_cast<u32>(h2s(x)));
      for (u64 y : plan.down.buckets[i]) down.push_back(static_cast<u32>(h2(y)));
      up = sorted_set(std::move(up));
      down = sorted_set(std::move(down));
      for (u64 shift = 0; shift < plan.sqrt_q; ++shift) {
        sys.family_a[plan.up_set(t, i, shift)] = shifted(up, shift * plan.sqrt_q, plan.Q);
        sys.family_b[plan.down_set(t, i, shift)] = shifted(down, (plan.Q - shift) % plan.Q, plan.Q);
      }
    }
  }

  out.batch.pairs.reserve(4 * plan.light.size() * plan.R * rounds);
  plan.origins.reserve(out.batch.pairs.capacity());
  // Empty buckets can never meet, so (z, i, e1) combinations touching one are skipped.
  for (u64 z : plan.light) {
    const u64 hz = plan.h1(z);
    for (u64 i = 0; i < plan.R; ++i) {
      if (plan.up.buckets[i].empty()) continue;
      for (u8 e1 = 0; e1 < 2; ++e1) {
        const u64 j = (i + 2 * plan.R - hz - e1) % plan.R;
        if (plan.down.buckets[j].empty()) continue;
        if (plan.R == 1 && e1 == 1) continue;  // same j as e1 = 0
        for (std::size_t t = 0; t < rounds; ++t) {
          const u64 h2z = plan.rounds[t](z);
          for (u8 e2 = 0; e2 < 2; ++e2) {
            if (plan.Q == 1 && e2 == 1) continue;
            const u64 D = (2 * plan.Q - h2z - e2) % plan.Q;
            QueryOrigin o;
            o.z = z;
            o.i = static_cast<u32>(i);
            o.j = static_cast<u32>(j);
            o.e1 = e1;
            o.e2 = e2;
            o.round = static_cast<u32>(t);
            o.shift_up = static_cast<u32>(D / plan.sqrt_q);
            o.shift_down = static_cast<u32>(D % plan.sqrt_q);
            out.batch.pairs.push_back({plan.up_set(t, i, o.shift_up), plan.down_set(t, j, o.shift_down)});
            plan.origins.push_back(o);
          }
        }
      }
    }
  }
  return out;
}

std::optional<Witness3> check_heavy(const ThreeSumInstance& inst, const SDPlan& plan) {
  for (u64 e : plan.heavy)
    if (auto w = heavy_witness(inst, e)) return w;
  return std::nullopt;
}

}  // namespace

u64 bucket_count(std::size_t n, double gamma) {
  if (n <= 1) return 1;
  const double e = gamma * std::log2(static_cast<double>(n));
  const auto k = static_cast<unsigned>(std::max(0.0, std::ceil(e - 1e-9)));
  return u64{1} << k;
}

u64 sd_universe(std::size_t n, u64 R) {
  const u64 nn = static_cast<u64>(n) * n;
  const u64 r2 = R * R;
  return ceil_pow4(std::max<u64>(1, (25 * nn + r2 - 1) / r2));
}

u64 si_universe(std::size_t n, u64 R, double delta) {
  const double x = std::pow(static_cast<double>(n), 1 + delta) / static_cast<double>(R);
  return ceil_pow4(std::max<u64>(1, static_cast<u64>(std::ceil(x - 1e-9))));
}

std::size_t sd_round_count(std::size_t n) {
  if (n <= 1) return 1;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(2 * std::log2(static_cast<double>(n)) - 1e-9)));
}

SDInstance build_sd_instance(const ThreeSumInstance& inst, double gamma, u64 seed) {
  return build_instance(inst, gamma, 0, seed, SetQueryKind::disjointness);
}

SDInstance build_si_instance(const ThreeSumInstance& inst, double gamma, double delta, u64 seed) {
  return build_instance(inst, gamma, delta, seed, SetQueryKind::intersection);
}

std::optional<Witness3> verify_candidate(const ThreeSumInstance& inst, const SDPlan& plan, u64 z, u64 i,
                                         OpCounter* work) {
  if (i >= plan.R) return std::nullopt;
  for (u64 x : plan.up.buckets[i]) {
    bump(work);
    if (x > z && x - z != z && inst.contains(x - z)) return Witness3{x - z, z, x};
    if (x != z && x + z < inst.universe() && inst.contains(x + z)) return Witness3{x, z, x + z};
  }
  return std::nullopt;
}

std::optional<Witness3> heavy_witness(const ThreeSumInstance& inst, u64 e) {
  const auto values = inst.values();
  // e as minuend: e - y = x.
  for (u64 y : values)
    if (y < e && e - y != y && inst.contains(e - y)) return Witness3{e - y, y, e};
  // e as subtrahend: z - e = x.
  for (u64 z : values)
    if (z > e && z - e != e && inst.contains(z - e)) return Witness3{z - e, e, z};
  // e as difference: z - y = e.
  for (u64 y : values)
    if (y != e && inst.contains(e + y)) return Witness3{e, y, e + y};
  return std::nullopt;
}

std::optional<Witness3> solve_3sum_via_sd(const ThreeSumInstance& inst, double gamma,
                                          SetQueryBackend& backend, u64 seed, SDRunStats* stats) {
  if (auto zeros = zero_witnesses(inst); !zeros.empty()) return zeros.front();
  const ThreeSumInstance core = strip_zero(inst);
  const SDInstance sd = build_sd_instance(core, gamma, seed);
  const SDPlan& plan = sd.plan;
  SDRunStats local;
  SDRunStats& st = stats ? *stats : local;
  st = {};
  st.heavy = plan.heavy.size();
  st.queries = sd.batch.pairs.size();

  if (auto w = check_heavy(core, plan)) return w;

  const std::vector<bool> disjoint = backend.disjointness(sd.sys, sd.batch);
  st.backend_work = backend.last_work();

  // Queries for one (z, i, e1) are contiguous, ordered by round then e2.
  const std::size_t rounds = plan.round_count();
  OpCounter work;
  std::size_t q = 0;
  u64 last_z = ~u64{0}, last_i = ~u64{0};
  while (q < sd.batch.pairs.size()) {
    const QueryOrigin& o = plan.origins[q];
    std::size_t end = q;
    std::vector<bool> round_hit(rounds, false);
    while (end < sd.batch.pairs.size() && plan.origins[end].z == o.z && plan.origins[end].i == o.i &&
           plan.origins[end].e1 == o.e1) {
      if (!disjoint[end]) round_hit[plan.origins[end].round] = true;
      ++end;
    }
    const bool candidate = std::all_of(round_hit.begin(), round_hit.end(), [](bool b) { return b; });
    if (candidate && !(o.z == last_z && o.i == last_i)) {
      last_z = o.z;
      last_i = o.i;
      ++st.candidates;
      auto w = verify_candidate(core, plan, o.z, o.i, &work);
      st.verify_work = work.ops;
      if (w) return w;
      ++st.false_candidates;
    }
    q = end;
  }
  st.verify_work = work.ops;
  return std::nullopt;
}

std::optional<Witness3> solve_3sum_via_si(const ThreeSumInstance& inst, double gamma, double delta,
                                          SetQueryBackend& backend, u64 seed, SDRunStats* stats) {
  if (auto zeros = zero_witnesses(inst); !zeros.empty()) return zeros.front();
  const ThreeSumInstance core = strip_zero(inst);
  const SDInstance si = build_si_instance(core, gamma, delta, seed);
  const SDPlan& plan = si.plan;
  SDRunStats local;
  SDRunStats& st = stats ? *stats : local;
  st = {};
  st.heavy = plan.heavy.size();
  st.queries = si.batch.pairs.size();

  if (auto w = check_heavy(core, plan)) return w;

  const auto reported = backend.intersection(si.sys, si.batch);
  st.backend_work = backend.last_work();
  for (const auto& r : reported) st.reported += r.size();

  // Per bucket: hash value -> elements, for both roles.
  const auto& h2 = plan.rounds[0];
  const auto& h2s = plan.rounds_sum[0];
  std::vector<std::unordered_map<u64, std::vector<u64>>> up_by_hash(plan.R), down_by_hash(plan.R);
  for (u64 i = 0; i < plan.R; ++i) {
    for (u64 x : plan.up.buckets[i]) up_by_hash[i][h2s(x)].push_back(x);
    for (u64 y : plan.down.buckets[i]) down_by_hash[i][h2(y)].push_back(y);
  }

  OpCounter work;
  for (std::size_t q = 0; q < reported.size(); ++q) {
    const QueryOrigin& o = plan.origins[q];
    for (u32 v : reported[q]) {
      const u64 hx = (v + plan.Q - static_cast<u64>(o.shift_up) * plan.sqrt_q % plan.Q) % plan.Q;
      const u64 hy = (v + o.shift_down) % plan.Q;
      auto xs = up_by_hash[o.i].find(hx);
      auto ys = down_by_hash[o.j].find(hy);
      if (xs == up_by_hash[o.i].end() || ys == down_by_hash[o.j].end()) continue;
      for (u64 x : xs->second) {
        for (u64 y : ys->second) {
          work.add();
          ++st.candidates;
          if (y != o.z && y + o.z == x) {
            st.verify_work = work.ops;
            return Witness3{y, o.z, x};
          }
          ++st.false_candidates;
        }
      }
    }
  }
  st.verify_work = work.ops;
  return std::nullopt;
}

void write_plan(std::ostream& out, const SDPlan& plan) {
  auto hash = [](const PairwiseAffineHash& h) {
    return nlohmann::json{{"a", h.a}, {"b", h.b}, {"u", h.u}, {"m", h.m}, {"r", h.r}};
  };
  nlohmann::json j;
  j["kind"] = plan.kind == SetQueryKind::disjointness ? "disjointness" : "intersection";
  j["n"] = plan.n;
  j["gamma"] = plan.gamma;
  j["delta"] = plan.delta;
  j["R"] = plan.R;
  j["Q"] = plan.Q;
  j["sqrt_Q"] = plan.sqrt_q;
  j["h1"] = hash(plan.h1);
  j["h1_sum"] = hash(plan.h1_sum);
  j["rounds"] = nlohmann::json::array();
  for (std::size_t t = 0; t < plan.rounds.size(); ++t)
    j["rounds"].push_back({{"h2", hash(plan.rounds[t])}, {"h2_sum", hash(plan.rounds_sum[t])}});
  j["heavy_threshold"] = {{"num", plan.heavy_threshold.num}, {"den", plan.heavy_threshold.den}};
  j["heavy"] = plan.heavy;
  j["light_count"] = plan.light.size();
  j["query_count"] = plan.origins.size();
  out << j.dump(2) << '\n';
}

}  // namespace tsr
