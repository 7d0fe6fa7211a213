#include "tsr/setsystem.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "textio.hpp"
#include "tsr/kernels.hpp"

namespace tsr {

namespace {

void validate_family(const std::vector<std::vector<u32>>& family, u64 universe, const char* name) {
  for (const auto& set : family) {
    for (std::size_t k = 0; k < set.size(); ++k) {
      if (set[k] >= universe) throw ParameterError(std::string(name) + ": element outside universe");
      if (k && set[k - 1] >= set[k])
        throw ParameterError(std::string(name) + ": set not strictly increasing");
    }
  }
}

void mark_heavy(const std::vector<std::vector<u32>>& family, std::size_t total, std::vector<u32>& index,
                std::size_t& count) {
  index.assign(family.size(), ~u32{0});
  count = 0;
  for (std::size_t s = 0; s < family.size(); ++s) {
    const u64 size = family[s].size();
    if (size * size > total) index[s] = static_cast<u32>(count++);
  }
}

class BruteBackend final : public SetQueryBackend {
 public:
  std::string_view name() const noexcept override { return "brute"; }

  std::vector<bool> disjointness(const SetSystem& sys, const QueryBatch& batch) override {
    work_ = {};
    for (const auto& q : batch.pairs) work_.add(sys.family_a[q.a].size() + sys.family_b[q.b].size());
    return brute_disjointness(sys, batch);
  }

  std::vector<std::vector<u32>> intersection(const SetSystem& sys, const QueryBatch& batch) override {
    work_ = {};
    for (const auto& q : batch.pairs) work_.add(sys.family_a[q.a].size() + sys.family_b[q.b].size());
    return brute_intersection(sys, batch);
  }
};

class HeavyLightBackend final : public SetQueryBackend {
 public:
  std::string_view name() const noexcept override { return "heavylight"; }

  std::vector<bool> disjointness(const SetSystem& sys, const QueryBatch& batch) override {
    work_ = {};
    const HeavyLightStructure s(sys, &work_);
    std::vector<bool> out;
    out.reserve(batch.pairs.size());
    for (const auto& q : batch.pairs) out.push_back(s.disjoint(q.a, q.b, &work_));
    return out;
  }

  std::vector<std::vector<u32>> intersection(const SetSystem& sys, const QueryBatch& batch) override {
    work_ = {};
    const HeavyLightStructure s(sys, &work_);
    std::vector<std::vector<u32>> out;
    out.reserve(batch.pairs.size());
    for (const auto& q : batch.pairs) out.push_back(s.intersection(q.a, q.b, &work_));
    return out;
  }
};

}  // namespace

void SetSystem::validate() const {
  validate_family(family_a, universe_size, "family A");
  validate_family(family_b, universe_size, "family B");
  if (family_a.size() > ~u32{0} || family_b.size() > ~u32{0} || universe_size > (u64{1} << 31))
    throw ParameterError("set system too large");
}

std::size_t SetSystem::total_size() const noexcept {
  std::size_t n = 0;
  for (const auto& s : family_a) n += s.size();
  for (const auto& s : family_b) n += s.size();
  return n;
}

void QueryBatch::validate(const SetSystem& sys) const {
  for (const auto& q : pairs)
    if (q.a >= sys.family_a.size() || q.b >= sys.family_b.size())
      throw ParameterError("query index out of range");
}

std::vector<bool> brute_disjointness(const SetSystem& sys, const QueryBatch& batch) {
  std::vector<bool> out;
  out.reserve(batch.pairs.size());
  for (const auto& q : batch.pairs)
    out.push_back(!kernels::sorted_intersects(sys.family_a[q.a], sys.family_b[q.b]));
  return out;
}

std::vector<std::vector<u32>> brute_intersection(const SetSystem& sys, const QueryBatch& batch) {
  std::vector<std::vector<u32>> out(batch.pairs.size());
  for (std::size_t k = 0; k < batch.pairs.size(); ++k) {
    const auto& q = batch.pairs[k];
    kernels::sorted_intersect(sys.family_a[q.a], sys.family_b[q.b], out[k]);
  }
  return out;
}

HeavyLightStructure::HeavyLightStructure(const SetSystem& sys, OpCounter* work)
    : sys_(&sys), total_(sys.total_size()) {
  mark_heavy(sys.family_a, total_, heavy_index_a_, heavy_a_count_);
  mark_heavy(sys.family_b, total_, heavy_index_b_, heavy_b_count_);

  index_.reserve(total_);
  for (std::size_t s = 0; s < sys.family_a.size(); ++s)
    for (u32 e : sys.family_a[s]) index_.insert(key(0, s, e));
  for (std::size_t s = 0; s < sys.family_b.size(); ++s)
    for (u32 e : sys.family_b[s]) index_.insert(key(1, s, e));
  bump(work, total_);

  // One marking pass per heavy A-set, then a scan of every heavy B-set.
  heavy_disjoint_.assign(heavy_a_count_ * heavy_b_count_, true);
  std::vector<bool> mark(sys.universe_size, false);
  for (std::size_t a = 0; a < sys.family_a.size(); ++a) {
    if (heavy_index_a_[a] == npos) continue;
    for (u32 e : sys.family_a[a]) mark[e] = true;
    bump(work, sys.family_a[a].size());
    for (std::size_t b = 0; b < sys.family_b.size(); ++b) {
      if (heavy_index_b_[b] == npos) continue;
      bool hit = false;
      for (u32 e : sys.family_b[b]) {
        bump(work);
        if (mark[e]) {
          hit = true;
          break;
        }
      }
      heavy_disjoint_[heavy_index_a_[a] * heavy_b_count_ + heavy_index_b_[b]] = !hit;
    }
    for (u32 e : sys.family_a[a]) mark[e] = false;
    bump(work, sys.family_a[a].size());
  }
}

bool HeavyLightStructure::disjoint(u32 a, u32 b, OpCounter* work) const {
  bump(work);
  if (heavy_a(a) && heavy_b(b))
    return heavy_disjoint_[heavy_index_a_[a] * heavy_b_count_ + heavy_index_b_[b]];
  const auto& sa = sys_->family_a[a];
  const auto& sb = sys_->family_b[b];
  if (sa.size() <= sb.size()) {
    for (u32 e : sa) {
      bump(work);
      if (member_b(b, e)) return false;
    }
  } else {
    for (u32 e : sb) {
      bump(work);
      if (member_a(a, e)) return false;
    }
  }
  return true;
}

std::vector<u32> HeavyLightStructure::intersection(u32 a, u32 b, OpCounter* work) const {
  std::vector<u32> out;
  if (heavy_a(a) && heavy_b(b)) {
    bump(work);
    if (heavy_disjoint_[heavy_index_a_[a] * heavy_b_count_ + heavy_index_b_[b]]) return out;
    const auto& sa = sys_->family_a[a];
    const auto& sb = sys_->family_b[b];
    bump(work, sa.size() + sb.size());
    kernels::sorted_intersect(sa, sb, out);
    return out;
  }
  const auto& sa = sys_->family_a[a];
  const auto& sb = sys_->family_b[b];
  if (sa.size() <= sb.size()) {
    for (u32 e : sa) {
      bump(work);
      if (member_b(b, e)) out.push_back(e);
    }
  } else {
    for (u32 e : sb) {
      bump(work);
      if (member_a(a, e)) out.push_back(e);
    }
  }
  return out;
}

HeavyLightStructure build_heavylight(const SetSystem& sys, OpCounter* work) {
  return HeavyLightStructure(sys, work);
}

bool query_heavylight(const HeavyLightStructure& s, u32 a, u32 b, OpCounter* work) {
  return s.disjoint(a, b, work);
}

std::unique_ptr<SetQueryBackend> make_backend(std::string_view name) {
  if (name == "brute") return std::make_unique<BruteBackend>();
  if (name == "heavylight") return std::make_unique<HeavyLightBackend>();
  throw ParameterError("unknown backend '" + std::string(name) + "'");
}

SetSystem random_set_system(Rng& rng, u64 universe, std::size_t na, std::size_t nb, double density) {
  SetSystem sys;
  sys.universe_size = universe;
  auto fill = [&](std::vector<std::vector<u32>>& family, std::size_t count) {
    family.resize(count);
    for (auto& set : family)
      for (u64 e = 0; e < universe; ++e)
        if (rng.bernoulli(density)) set.push_back(static_cast<u32>(e));
  };
  fill(sys.family_a, na);
  fill(sys.family_b, nb);
  return sys;
}

QueryBatch random_batch(Rng& rng, const SetSystem& sys, std::size_t q) {
  QueryBatch batch;
  if (sys.family_a.empty() || sys.family_b.empty()) return batch;
  for (std::size_t k = 0; k < q; ++k)
    batch.pairs.push_back({static_cast<u32>(rng.below(sys.family_a.size())),
                           static_cast<u32>(rng.below(sys.family_b.size()))});
  return batch;
}

void write_setsys(std::ostream& out, const SetSystem& sys, const QueryBatch& batch) {
  out << "setsys 1\n"
      << sys.universe_size << '\n'
      << sys.family_a.size() << '\n'
      << sys.family_b.size() << '\n'
      << batch.pairs.size() << '\n';
  auto put = [&](const std::vector<u32>& set) {
    out << set.size();
    for (u32 e : set) out << ' ' << e;
    out << '\n';
  };
  for (const auto& s : sys.family_a) put(s);
  for (const auto& s : sys.family_b) put(s);
  for (const auto& q : batch.pairs) out << q.a << ' ' << q.b << '\n';
}

std::pair<SetSystem, QueryBatch> read_setsys(std::istream& in) {
  using textio::read_number;
  textio::expect_header(in, "setsys");
  SetSystem sys;
  sys.universe_size = read_number<u64>(in, "universe_size");
  const auto na = read_number<std::size_t>(in, "|A|");
  const auto nb = read_number<std::size_t>(in, "|B|");
  const auto q = read_number<std::size_t>(in, "q");
  auto get = [&](std::vector<std::vector<u32>>& family, std::size_t count) {
    family.resize(count);
    for (auto& set : family) {
      const auto size = read_number<std::size_t>(in, "set size");
      set.resize(size);
      for (auto& e : set) e = read_number<u32>(in, "element");
    }
  };
  get(sys.family_a, na);
  get(sys.family_b, nb);
  QueryBatch batch;
  batch.pairs.resize(q);
  for (auto& p : batch.pairs) {
    p.a = read_number<u32>(in, "query a");
    p.b = read_number<u32>(in, "query b");
  }
  try {
    sys.validate();
    batch.validate(sys);
  } catch (const ParameterError& e) {
    throw ParseError(e.what());
  }
  return {std::move(sys), std::move(batch)};
}

}  // namespace tsr
