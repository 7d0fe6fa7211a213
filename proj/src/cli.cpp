#include "tsr/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "tsr/acceptance.hpp"
#include "tsr/conv_reduction.hpp"
#include "tsr/matching.hpp"
#include "tsr/sd_reduction.hpp"
#include "tsr/setsystem.hpp"
#include "tsr/threesum.hpp"
#include "tsr/triangles.hpp"

namespace tsr {

namespace {

struct RunConfig {
  std::size_t n = 64;
  u64 u = u64{1} << 20;
  double gamma = 0.5;
  double delta = 0.5;
  u64 seed = 1;
  std::string via = "sd";
  std::string backend = "brute";
  std::string in;
  std::string out;
  std::string plan_out;
  std::string format = "plain";
  std::string kind;
  std::string plant = "none";
  std::string task = "sd";
  std::string mode = "rollback";
  double alpha = 0.5;
  std::size_t trials = 1;
  std::size_t ell = 0;
  bool check = false;
  bool quick = false;
  bool no_timing = false;
  std::string fault = "none";
  std::vector<int> only;
  std::vector<int> skip;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

Plant parse_plant(const std::string& s) {
  if (s == "none") return Plant::none;
  if (s == "witness") return Plant::witness;
  if (s == "sumfree") return Plant::sumfree;
  throw UsageError("unknown plant '" + s + "'");
}

// Writes to the --out file when given, else to `fallback`.
template <class Fn>
void emit(const RunConfig& c, std::ostream& fallback, Fn&& fn) {
  if (c.out.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) throw UsageError("cannot open '" + c.out + "' for writing");
  fn(file);
  if (!file) throw UsageError("write to '" + c.out + "' failed");
}

template <class Fn>
auto with_input(const RunConfig& c, Fn&& fn) {
  if (c.in.empty()) throw UsageError("--in is required");
  std::ifstream file(c.in, std::ios::binary);
  if (!file) throw UsageError("cannot open '" + c.in + "'");
  return fn(file);
}

ThreeSumInstance random_instance(const RunConfig& c, const char* label, u64 seed) {
  Rng rng = Rng::stream(seed, label);
  return gen_instance(c.n, c.u, parse_plant(c.plant), rng);
}

int cmd_gen(const RunConfig& c, std::ostream& out) {
  if (c.kind == "3sum") {
    const auto inst = random_instance(c, "gen.3sum", c.seed);
    emit(c, out, [&](std::ostream& o) { write_instance(o, inst); });
  } else if (c.kind == "conv") {
    const auto inst = strip_zero(random_instance(c, "gen.3sum", c.seed));
    Rng rng = Rng::stream(c.seed, "gen.conv.plan");
    const ConvPlan plan = plan_conv(inst, {}, rng);
    const auto vec = build_vector(plan, plan.ell_at(c.ell));
    emit(c, out, [&](std::ostream& o) { write_conv(o, vec); });
  } else if (c.kind == "setsys") {
    const auto inst = strip_zero(random_instance(c, "gen.3sum", c.seed));
    const SDInstance sd = c.via == "si" ? build_si_instance(inst, c.gamma, c.delta, c.seed)
                                        : build_sd_instance(inst, c.gamma, c.seed);
    emit(c, out, [&](std::ostream& o) { write_setsys(o, sd.sys, sd.batch); });
  } else if (c.kind == "graph") {
    const HardInstance h = hard_instance(c.n, c.gamma, c.delta, c.seed);
    emit(c, out, [&](std::ostream& o) { write_graph(o, h.split.graph); });
  } else {
    throw UsageError("gen: unknown kind '" + c.kind + "'");
  }
  return kExitOk;
}

std::optional<Witness3> solve_with(const RunConfig& c, const ThreeSumInstance& inst, u64 seed, u64* ops) {
  if (c.via == "brute") {
    if (ops) *ops = inst.size() * (inst.size() + 1) / 2;
    return solve_3sum_bruteforce(inst);
  }
  if (c.via == "conv") {
    Rng rng = Rng::stream(seed, "solve.conv");
    ConvRunStats st;
    auto w = solve_3sum_via_conv(inst, default_conv_solver(), {}, rng, &st);
    if (ops) *ops = st.calls;
    return w;
  }
  auto backend = make_backend(c.backend);
  SDRunStats st;
  std::optional<Witness3> w;
  if (c.via == "sd") {
    w = solve_3sum_via_sd(inst, c.gamma, *backend, seed, &st);
  } else if (c.via == "si") {
    w = solve_3sum_via_si(inst, c.gamma, c.delta, *backend, seed, &st);
  } else {
    throw UsageError("unknown --via '" + c.via + "'");
  }
  if (ops) *ops = st.backend_work + st.verify_work;
  return w;
}

int cmd_solve(const RunConfig& c, std::ostream& out) {
  const auto inst = with_input(c, [](std::istream& in) { return read_instance(in); });
  const auto w = solve_with(c, inst, c.seed, nullptr);
  if (w && !is_valid_witness(inst, *w)) throw InvariantError("solver returned an invalid witness");
  std::string check = "none";
  if (c.check) check = solve_3sum_bruteforce(inst).has_value() == w.has_value() ? "agree" : "disagree";

  emit(c, out, [&](std::ostream& o) {
    if (c.format == "csv") {
      o << "via,n,decision,x,y,z,check\n" << c.via << ',' << inst.size() << ',' << (w ? "witness" : "none") << ',';
      if (w) o << w->x << ',' << w->y << ',' << w->z;
      else o << ",,";
      o << ',' << check << '\n';
    } else {
      if (w) o << "witness found: " << w->x << " + " << w->y << " = " << w->z << '\n';
      else o << "no witness\n";
      if (c.check) o << "check=" << check << '\n';
    }
  });
  return check == "disagree" ? kExitFailure : kExitOk;
}

std::string format_double(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

int cmd_bench(const RunConfig& c, std::ostream& out) {
  std::ostringstream rows;
  rows << "task,n,gamma,delta,seed,ops,micros,result\n";
  for (std::size_t t = 0; t < c.trials; ++t) {
    const u64 seed = c.seed + t;
    u64 ops = 0;
    std::string result;
    const auto start = std::chrono::steady_clock::now();
    if (c.task == "sd" || c.task == "si" || c.task == "conv" || c.task == "brute") {
      RunConfig rc = c;
      rc.via = c.task;
      const auto inst = random_instance(c, "bench.instance", seed);
      const auto w = solve_with(rc, inst, seed, &ops);
      result = w ? "witness" : "none";
    } else if (c.task == "triangles") {
      const HardInstance h = hard_instance(c.n, c.gamma, c.delta, seed);
      OpCounter work;
      result = std::to_string(enum_triangles_cn(h.split.graph, &work).size());
      ops = work.ops;
    } else if (c.task == "matching") {
      Rng rng = Rng::stream(seed, "bench.matching");
      const SetSystem sys = random_set_system(rng, c.n, c.n / 2 + 1, c.n / 2 + 1, 0.1);
      const QueryBatch batch = random_batch(rng, sys, c.n);
      std::size_t disjoint = 0;
      for (const auto& r : run_gadget_queries(sys, batch, QueryMode::combined, c.alpha)) {
        ops += r.work;
        disjoint += r.disjoint;
      }
      result = std::to_string(disjoint);
    } else {
      throw UsageError("unknown --task '" + c.task + "'");
    }
    const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);
    rows << c.task << ',' << c.n << ',' << format_double(c.gamma) << ',' << format_double(c.delta) << ',' << seed << ','
         << ops << ',' << (c.no_timing ? 0 : micros.count()) << ',' << result << '\n';
  }
  emit(c, out, [&](std::ostream& o) { o << rows.str(); });
  return kExitOk;
}

int cmd_selftest(const RunConfig& c, std::ostream& out) {
  if (c.fault == "layout") set_layout_fault(LayoutFault::gamma_shift);
  else if (c.fault != "none") throw UsageError("unknown fault '" + c.fault + "'");
  AcceptanceOptions opt;
  opt.quick = c.quick;
  opt.only = c.only;
  opt.skip = c.skip;
  std::vector<CriterionResult> results;
  try {
    results = run_acceptance(opt, out);
  } catch (...) {
    set_layout_fault(LayoutFault::none);
    throw;
  }
  set_layout_fault(LayoutFault::none);
  std::size_t failed = 0;
  for (const auto& r : results) failed += !r.pass;
  out << (failed ? "selftest: " + std::to_string(failed) + " criteria failed\n" : std::string("selftest: all passed\n"));
  return failed ? kExitFailure : kExitOk;
}

int cmd_match(const RunConfig& c, std::ostream& out) {
  const auto [sys, batch] = with_input(c, [](std::istream& in) { return read_setsys(in); });
  QueryMode mode;
  if (c.mode == "rollback") mode = QueryMode::rollback;
  else if (c.mode == "perfect") mode = QueryMode::perfect;
  else if (c.mode == "combined") mode = QueryMode::combined;
  else throw UsageError("unknown --mode '" + c.mode + "'");
  const auto records = run_gadget_queries(sys, batch, mode, c.alpha);
  emit(c, out, [&](std::ostream& o) { write_query_csv(o, records); });
  if (c.check) {
    const auto truth = brute_disjointness(sys, batch);
    for (const auto& r : records)
      if (r.disjoint != truth[r.index]) return kExitFailure;
  }
  return kExitOk;
}

int cmd_triangles(const RunConfig& c, std::ostream& out) {
  if (!c.in.empty()) {
    const Graph g = with_input(c, [](std::istream& in) { return read_graph(in); });
    OpCounter work;
    const auto tri = enum_triangles_cn(g, &work);
    const auto d = degeneracy_order(g);
    emit(c, out, [&](std::ostream& o) {
      o << "vertices,edges,degeneracy,triangles,ops\n"
        << g.vertex_count() << ',' << g.edge_count() << ',' << d.degeneracy << ',' << tri.size() << ',' << work.ops
        << '\n';
    });
    if (c.check && enum_triangles_brute(g) != tri) return kExitFailure;
    return kExitOk;
  }
  const HardInstance h = hard_instance(c.n, c.gamma, c.delta, c.seed);
  emit(c, out, [&](std::ostream& o) {
    write_stats_header(o);
    write_stats_row(o, h.stats);
  });
  if (c.check && h.stats.triangles != h.stats.intersection_total) return kExitFailure;
  return kExitOk;
}

int cmd_reduce(const RunConfig& c, std::ostream& out) {
  const auto inst = strip_zero(with_input(c, [](std::istream& in) { return read_instance(in); }));
  const SDInstance sd = c.via == "si" ? build_si_instance(inst, c.gamma, c.delta, c.seed)
                                      : build_sd_instance(inst, c.gamma, c.seed);
  emit(c, out, [&](std::ostream& o) { write_setsys(o, sd.sys, sd.batch); });
  if (!c.plan_out.empty()) {
    std::ofstream file(c.plan_out, std::ios::binary);
    if (!file) throw UsageError("cannot open '" + c.plan_out + "' for writing");
    write_plan(file, sd.plan);
  }
  return kExitOk;
}

void add_common(CLI::App* app, RunConfig& c) {
  app->add_option("--n", c.n, "Instance size")->check(CLI::PositiveNumber);
  app->add_option("--u", c.u, "Universe size (power of two)");
  app->add_option("--gamma", c.gamma, "Bucket exponent: R = n^gamma");
  app->add_option("--delta", c.delta, "SetIntersection exponent");
  app->add_option("--seed", c.seed, "Random seed");
  app->add_option("--out", c.out, "Output path (default stdout)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"3SUM reductions to set queries, triangles and matching"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  gen->add_option("kind", c.kind, "3sum | conv | setsys | graph")->required()->check(CLI::IsMember({"3sum", "conv", "setsys", "graph"}));
  add_common(gen, c);
  gen->add_option("--plant", c.plant, "none | witness | sumfree")->check(CLI::IsMember({"none", "witness", "sumfree"}));
  gen->add_option("--ell", c.ell, "conv: index of the vector in [8TL)");
  gen->add_option("--via", c.via, "setsys: sd | si")->check(CLI::IsMember({"sd", "si"}));

  auto* solve = app.add_subcommand("solve", "Decide a 3SUM instance file");
  add_common(solve, c);
  solve->add_option("--in", c.in, "3SUM instance file")->required();
  solve->add_option("--via", c.via, "sd | si | conv | brute")->check(CLI::IsMember({"sd", "si", "conv", "brute"}));
  solve->add_option("--backend", c.backend, "brute | heavylight")->check(CLI::IsMember({"brute", "heavylight"}));
  solve->add_flag("--check", c.check, "Compare with the brute-force oracle");
  solve->add_option("--format", c.format, "plain | csv")->check(CLI::IsMember({"plain", "csv"}));

  auto* bench = app.add_subcommand("bench", "Run trials and print CSV");
  add_common(bench, c);
  bench->add_option("--task", c.task, "sd | si | conv | brute | triangles | matching")
      ->check(CLI::IsMember({"sd", "si", "conv", "brute", "triangles", "matching"}));
  bench->add_option("--backend", c.backend, "brute | heavylight")->check(CLI::IsMember({"brute", "heavylight"}));
  bench->add_option("--plant", c.plant, "none | witness | sumfree")->check(CLI::IsMember({"none", "witness", "sumfree"}));
  bench->add_option("--trials", c.trials, "Number of trials (seeds seed, seed+1, ...)");
  bench->add_option("--alpha", c.alpha, "matching: combined-policy exponent");
  bench->add_flag("--no-timing", c.no_timing, "Print 0 in the micros column");
  bench->add_option("--format", c.format, "csv only")->check(CLI::IsMember({"csv"}));

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_flag("--quick", c.quick, "Reduced trial counts");
  selftest->add_option("--inject-fault", c.fault, "none | layout")->check(CLI::IsMember({"none", "layout"}));
  selftest->add_option("--only", c.only, "Criteria to run");
  selftest->add_option("--skip", c.skip, "Criteria to leave out");

  auto* match = app.add_subcommand("match", "Answer a setsys batch through the matching gadget");
  match->add_option("--in", c.in, "setsys file")->required();
  match->add_option("--mode", c.mode, "rollback | perfect | combined")
      ->check(CLI::IsMember({"rollback", "perfect", "combined"}));
  match->add_option("--alpha", c.alpha, "combined-policy exponent");
  match->add_option("--out", c.out, "Output path (default stdout)");
  match->add_flag("--check", c.check, "Compare with brute-force disjointness");

  auto* tri = app.add_subcommand("triangles", "Triangle statistics of a graph file or a generated hard instance");
  add_common(tri, c);
  tri->add_option("--in", c.in, "graph file");
  tri->add_flag("--check", c.check, "Compare with the brute-force count");

  auto* reduce = app.add_subcommand("reduce", "Write the set-query instance of a 3SUM file");
  add_common(reduce, c);
  reduce->add_option("--in", c.in, "3SUM instance file")->required();
  reduce->add_option("--via", c.via, "sd | si")->check(CLI::IsMember({"sd", "si"}));
  reduce->add_option("--plan", c.plan_out, "Also write the plan as JSON");

  std::vector<const char*> argv{"tsr"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(c, out);
    if (*solve) return cmd_solve(c, out);
    if (*bench) return cmd_bench(c, out);
    if (*selftest) return cmd_selftest(c, out);
    if (*match) return cmd_match(c, out);
    if (*tri) return cmd_triangles(c, out);
    if (*reduce) return cmd_reduce(c, out);
  } catch (const InvariantError& e) {
    err << "invariant violated: " << e.what() << '\n';
    return kExitFailure;
  } catch (const ConstructionFailed& e) {
    err << "construction failed: " << e.what() << '\n';
    return kExitFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace tsr
