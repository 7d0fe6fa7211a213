#include "tsr/threesum.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>

#include "textio.hpp"

namespace tsr {

using textio::expect_header;
using textio::read_number;

ThreeSumInstance::ThreeSumInstance(std::vector<u64> values, u64 u) : values_(std::move(values)), u_(u) {
  if (!is_pow2(u)) throw ParameterError("3SUM universe must be a power of two");
  std::sort(values_.begin(), values_.end());
  if (std::adjacent_find(values_.begin(), values_.end()) != values_.end())
    throw ParameterError("3SUM values must be distinct");
  if (!values_.empty() && values_.back() >= u) throw ParameterError("3SUM value outside [0, u)");
}

bool ThreeSumInstance::contains(u64 x) const noexcept {
  return std::binary_search(values_.begin(), values_.end(), x);
}

DifferenceTriple to_difference(const Witness3& w) noexcept { return {w.z, w.y, w.x}; }

Witness3 from_difference(const DifferenceTriple& d) noexcept {
  return {d.difference, d.subtrahend, d.minuend};
}

bool is_valid_witness(const ThreeSumInstance& inst, const Witness3& w) noexcept {
  return w.x != w.y && w.x + w.y == w.z && w.z >= w.x && inst.contains(w.x) && inst.contains(w.y) &&
         inst.contains(w.z);
}

std::optional<Witness3> solve_3sum_bruteforce(const ThreeSumInstance& inst) {
  const auto values = inst.values();
  std::unordered_set<u64> members(values.begin(), values.end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      const u64 sum = values[i] + values[j];
      if (sum > inst.max_value()) break;
      if (members.count(sum)) return Witness3{values[i], values[j], sum};
    }
  }
  return std::nullopt;
}

std::vector<Witness3> zero_witnesses(const ThreeSumInstance& inst) {
  std::vector<Witness3> out;
  if (!inst.contains(0)) return out;
  for (u64 y : inst.values())
    if (y != 0) out.push_back({0, y, y});
  return out;
}

ThreeSumInstance strip_zero(const ThreeSumInstance& inst) {
  std::vector<u64> kept;
  for (u64 v : inst.values())
    if (v != 0) kept.push_back(v);
  return ThreeSumInstance(std::move(kept), inst.universe());
}

bool is_valid_conv_witness(const ConvInstance& conv, const WitnessConv& w) noexcept {
  const std::size_t k = w.i + w.j;
  if (w.i >= conv.length() || w.j >= conv.length() || k >= conv.length()) return false;
  if (conv.is_hole(w.i) || conv.is_hole(w.j) || conv.is_hole(k)) return false;
  return conv.cells[w.i] + conv.cells[w.j] == conv.cells[k];
}

std::optional<WitnessConv> solve_conv_bruteforce(const ConvInstance& conv, IndexRule rule) {
  const std::size_t len = conv.length();
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = 0; i + j < len; ++j) {
      if (rule == IndexRule::distinct && i == j) continue;
      if (is_valid_conv_witness(conv, {i, j})) return WitnessConv{i, j};
    }
  }
  return std::nullopt;
}

std::optional<WitnessConv> solve_conv_sparse(const ConvInstance& conv, IndexRule rule) {
  std::vector<std::size_t> filled;
  for (std::size_t i = 0; i < conv.length(); ++i)
    if (!conv.is_hole(i)) filled.push_back(i);
  for (std::size_t p : filled) {
    for (std::size_t q : filled) {
      const std::size_t k = p + q;
      if (k >= conv.length()) break;
      if (rule == IndexRule::distinct && p == q) continue;
      if (!conv.is_hole(k) && conv.cells[p] + conv.cells[q] == conv.cells[k]) return WitnessConv{p, q};
    }
  }
  return std::nullopt;
}

ConvInstance to_numeric(const ConvInstance& conv) {
  u64 max_value = 0;
  for (u64 c : conv.cells)
    if (c != ConvInstance::hole) max_value = std::max(max_value, c);
  const u64 inf = 2 * max_value + 1;
  ConvInstance out = conv;
  for (u64& c : out.cells)
    if (c == ConvInstance::hole) c = inf;
  return out;
}

ThreeSumInstance gen_instance(std::size_t n, u64 u, Plant plant, Rng& rng) {
  if (!is_pow2(u) || u < 4) throw ParameterError("universe must be a power of two >= 4");
  if (n > u / 2) throw ParameterError("instance needs n <= u/2");
  if (plant == Plant::witness && n < 3) throw ParameterError("planting a witness needs n >= 3");

  std::unordered_set<u64> chosen;
  std::vector<u64> values;
  auto take = [&](u64 v) {
    if (chosen.insert(v).second) values.push_back(v);
  };

  if (plant == Plant::witness) {
    u64 x = rng.between(1, u / 2 - 1);
    u64 y;
    do {
      y = rng.between(1, u / 2 - 1);
    } while (y == x);
    take(x);
    take(y);
    take(x + y);
  }

  if (plant == Plant::sumfree) {
    // Greedy rejection: a candidate v is refused when it would complete a + b = c.
    std::size_t misses = 0;
    while (values.size() < n) {
      const u64 v = rng.between(1, u - 1);
      bool ok = !chosen.count(v);
      for (std::size_t k = 0; ok && k < values.size(); ++k) {
        const u64 w = values[k];
        if (chosen.count(v + w) || (w < v && chosen.count(v - w)) || (v < w && chosen.count(w - v)))
          ok = false;
      }
      if (ok) {
        take(v);
        misses = 0;
      } else if (++misses > 100000) {
        throw ConstructionFailed("could not grow a sum-free instance; universe too small");
      }
    }
  } else {
    while (values.size() < n) take(rng.between(1, u - 1));
  }
  return ThreeSumInstance(std::move(values), u);
}

void write_instance(std::ostream& out, const ThreeSumInstance& inst) {
  out << "3sum 1\n" << inst.size() << ' ' << inst.universe() << '\n';
  const auto values = inst.values();
  for (std::size_t k = 0; k < values.size(); ++k) out << (k ? " " : "") << values[k];
  out << '\n';
}

ThreeSumInstance read_instance(std::istream& in) {
  expect_header(in, "3sum");
  const auto n = read_number<std::size_t>(in, "n");
  const auto u = read_number<u64>(in, "u");
  std::vector<u64> values;
  values.reserve(n);
  for (std::size_t k = 0; k < n; ++k) values.push_back(read_number<u64>(in, "value"));
  try {
    return ThreeSumInstance(std::move(values), u);
  } catch (const ParameterError& e) {
    throw ParseError(e.what());
  }
}

void write_conv(std::ostream& out, const ConvInstance& conv) {
  out << "conv3sum 1\n" << conv.length() << '\n';
  for (std::size_t k = 0; k < conv.length(); ++k) {
    if (k) out << ' ';
    if (conv.is_hole(k)) {
      out << '_';
    } else {
      out << conv.cells[k];
    }
  }
  out << '\n';
}

ConvInstance read_conv(std::istream& in) {
  expect_header(in, "conv3sum");
  const auto len = read_number<std::size_t>(in, "len");
  ConvInstance conv;
  conv.cells.reserve(len);
  for (std::size_t k = 0; k < len; ++k) {
    std::string token;
    if (!(in >> token)) throw ParseError("unexpected end of input reading cell");
    if (token == "_") {
      conv.cells.push_back(ConvInstance::hole);
    } else {
      std::istringstream one(token);
      conv.cells.push_back(read_number<u64>(one, "cell"));
    }
  }
  return conv;
}

}  // namespace tsr
