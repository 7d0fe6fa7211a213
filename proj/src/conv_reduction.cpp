#include "tsr/conv_reduction.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

namespace tsr {

namespace {

std::atomic<LayoutFault> g_fault{LayoutFault::none};

// The rank-indexed bucket position of every element under hash i.
std::vector<u32> slots_for(const BucketTable& table, const std::vector<u64>& values) {
  std::vector<u32> slot(values.size(), ConvPlan::discarded);
  for (const auto& bucket : table.buckets) {
    for (std::size_t k = 0; k < bucket.size(); ++k) {
      auto it = std::lower_bound(values.begin(), values.end(), bucket[k]);
      slot[static_cast<std::size_t>(it - values.begin())] = static_cast<u32>(k);
    }
  }
  return slot;
}

}  // namespace

std::size_t default_bucket_cap(double epsilon) {
  if (!(epsilon > 0)) throw ParameterError("epsilon must be positive");
  return static_cast<std::size_t>(std::ceil(12.0 / epsilon - 1e-9));
}

std::optional<std::size_t> ConvPlan::rank_of(u64 x) const noexcept {
  auto it = std::lower_bound(values.begin(), values.end(), x);
  if (it == values.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - values.begin());
}

std::size_t ConvPlan::discard_count(std::size_t rank) const noexcept {
  std::size_t count = 0;
  for (const auto& s : slot) count += s[rank] == discarded;
  return count;
}

bool ConvPlan::bad(std::size_t rank) const noexcept {
  return discard_count(rank) * T > 4 * L;
}

EllIndex ConvPlan::ell_at(std::size_t index) const {
  if (index >= instance_count()) throw ParameterError("ell index out of range");
  EllIndex ell;
  ell.gamma = index % (2 * T);
  index /= 2 * T;
  ell.beta = static_cast<int>(index % 2);
  index /= 2;
  ell.alpha = static_cast<int>(index % 2) - 1;
  ell.i = index / 2;
  return ell;
}

std::size_t ConvPlan::index_of(const EllIndex& ell) const {
  return ((ell.i * 2 + static_cast<std::size_t>(ell.alpha + 1)) * 2 + static_cast<std::size_t>(ell.beta)) *
             (2 * T) +
         ell.gamma;
}

ConvPlan plan_conv(const ThreeSumInstance& inst, const ConvConfig& config, Rng& rng) {
  if (inst.contains(0)) throw ParameterError("conv reduction needs 0 removed from the instance");
  if (inst.size() == 0) throw ParameterError("conv reduction needs a nonempty instance");

  ConvPlan plan;
  plan.n = inst.size();
  plan.m = ceil_pow2(plan.n);
  plan.L = config.L ? config.L : default_code_length(plan.n);
  const std::size_t min_cap = default_bucket_cap(config.epsilon);
  plan.T = config.T ? config.T : min_cap;
  if (plan.T < min_cap) throw ParameterError("bucket cap T must be at least ceil(12/epsilon)");
  plan.values.assign(inst.values().begin(), inst.values().end());
  plan.code = build_code(plan.n, plan.L, config.epsilon, rng, config.code_attempts);

  const u64 u = std::max<u64>(inst.universe(), 2 * plan.m);
  const HeavyThreshold cap{plan.T, 1};
  for (std::size_t attempt = 0; attempt < config.max_resamples; ++attempt) {
    plan.hashes.clear();
    plan.bucket_tables.clear();
    plan.slot.clear();
    for (std::size_t i = 0; i < plan.L; ++i) {
      plan.hashes.push_back(sample_multishift(rng, u, plan.m));
      plan.bucket_tables.push_back(bucketize(plan.hashes.back(), plan.values, cap));
      plan.slot.push_back(slots_for(plan.bucket_tables.back(), plan.values));
    }
    bool any_bad = false;
    for (std::size_t r = 0; r < plan.n && !any_bad; ++r) any_bad = plan.bad(r);
    if (!any_bad) {
      plan.resamples = attempt;
      return plan;
    }
  }
  throw ConstructionFailed("conv plan: bad elements remained after every resample",
                           config.max_resamples);
}

void set_layout_fault(LayoutFault fault) noexcept { g_fault.store(fault); }
LayoutFault layout_fault() noexcept { return g_fault.load(); }

void build_vector_into(const ConvPlan& plan, const EllIndex& ell, ConvInstance& out) {
  const std::size_t T = plan.T;
  const std::size_t B = plan.block_length();
  const u64 m = plan.m;
  out.cells.assign(plan.vector_length(), ConvInstance::hole);

  const std::size_t gamma =
      layout_fault() == LayoutFault::gamma_shift ? (ell.gamma + 1) % (2 * T) : ell.gamma;
  const auto& buckets = plan.bucket_tables[ell.i].buckets;

  for (u64 j = 0; j < m; ++j) {
    const auto& bucket = buckets[j];
    for (std::size_t k = 0; k < bucket.size(); ++k) {
      const u64 x = bucket[k];
      const std::size_t r = *plan.rank_of(x);
      const int bit = plan.code.word(r).bit(ell.i) ? 1 : 0;
      const std::size_t offset = (bit ^ ell.beta) == 0 ? T + k : 2 * T + k;
      out.cells[j * B + offset] = x;
      // Bucket j sits in the shift region of blocks J with J - alpha = j (mod m).
      const u64 J = ell.alpha == 0 ? j : (j + m - 1) % m;
      const std::size_t shifted = 3 * T + (k + gamma) % (2 * T);
      out.cells[J * B + shifted] = x;
      out.cells[(J + m) * B + shifted] = x;
    }
  }
}

ConvInstance build_vector(const ConvPlan& plan, const EllIndex& ell) {
  ConvInstance out;
  build_vector_into(plan, ell, out);
  return out;
}

std::optional<ConvPrediction> predict_ell(const ConvPlan& plan, const Witness3& w) {
  const auto ra = plan.rank_of(w.x);
  const auto rb = plan.rank_of(w.y);
  const auto rc = plan.rank_of(w.z);
  if (!ra || !rb || !rc || w.x + w.y != w.z || w.x == w.y) return std::nullopt;
  const std::size_t T = plan.T;
  const std::size_t B = plan.block_length();
  const u64 m = plan.m;

  for (std::size_t i = 0; i < plan.L; ++i) {
    const auto& slot = plan.slot[i];
    if (slot[*ra] == ConvPlan::discarded || slot[*rb] == ConvPlan::discarded ||
        slot[*rc] == ConvPlan::discarded)
      continue;
    const bool ca = plan.code.word(*ra).bit(i);
    const bool cb = plan.code.word(*rb).bit(i);
    if (ca == cb) continue;

    const auto& h = plan.hashes[i];
    const u64 ja = h(w.x), jb = h(w.y), jc = h(w.z);
    const u64 diff = (ja + jb + m - jc) % m;
    if (diff != 0 && diff != m - 1) continue;  // cannot happen for an almost-linear h

    const std::size_t ka = slot[*ra], kb = slot[*rb], kc = slot[*rc];
    ConvPrediction p;
    p.ell.i = i;
    p.ell.alpha = diff == 0 ? 0 : -1;
    p.ell.beta = ca ? 1 : 0;
    p.ell.gamma = (ka + kb + 2 * T - kc) % (2 * T);
    p.p_a = ja * B + T + ka;
    p.p_b = jb * B + 2 * T + kb;
    p.p_c = (ja + jb) * B + 3 * T + (kc + p.ell.gamma) % (2 * T);
    return p;
  }
  return std::nullopt;
}

Witness3 map_witness(const ConvPlan& plan, const EllIndex& ell, const WitnessConv& wc,
                     const ConvInstance& vec) {
  (void)ell;
  if (!is_valid_conv_witness(vec, wc)) throw InvariantError("not a Conv3SUM witness of the vector");
  Witness3 w{vec.cells[wc.i], vec.cells[wc.j], vec.cells[wc.i + wc.j]};
  if (w.x == w.y || !plan.rank_of(w.x) || !plan.rank_of(w.y) || !plan.rank_of(w.z))
    throw InvariantError("Conv3SUM witness does not map to a 3SUM witness");
  return w;
}

ConvSolver default_conv_solver() {
  return [](const ConvInstance& conv) { return solve_conv_sparse(conv, IndexRule::distinct); };
}

std::optional<Witness3> solve_3sum_via_conv(const ThreeSumInstance& inst, const ConvSolver& solver,
                                            const ConvConfig& config, Rng& rng,
                                            ConvRunStats* stats) {
  if (auto zeros = zero_witnesses(inst); !zeros.empty()) return zeros.front();
  const ThreeSumInstance core = strip_zero(inst);
  if (core.size() == 0) return std::nullopt;

  const ConvPlan plan = plan_conv(core, config, rng);
  if (stats) {
    stats->T = plan.T;
    stats->L = plan.L;
    stats->resamples = plan.resamples;
    stats->calls = 0;
  }
  ConvInstance vec;
  for (std::size_t index = 0; index < plan.instance_count(); ++index) {
    const EllIndex ell = plan.ell_at(index);
    build_vector_into(plan, ell, vec);
    if (stats) ++stats->calls;
    if (auto wc = solver(vec)) return map_witness(plan, ell, *wc, vec);
  }
  return std::nullopt;
}

}  // namespace tsr
