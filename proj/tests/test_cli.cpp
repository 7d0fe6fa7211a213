#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "tsr/cli.hpp"
#include "tsr/threesum.hpp"

using namespace tsr;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("tsr-cli-" + std::to_string(::getpid()) + "-" + name)).string();
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("gen writes parseable, reproducible files") {
  const auto a = run({"gen", "3sum", "--n", "64", "--seed", "1"});
  CHECK(a.code == kExitOk);
  std::istringstream in(a.out);
  CHECK(read_instance(in).size() == 64);
  CHECK(run({"gen", "3sum", "--n", "64", "--seed", "1"}).out == a.out);
  CHECK(run({"gen", "3sum", "--n", "64", "--seed", "2"}).out != a.out);
  CHECK(run({"gen", "3sum", "--n", "0"}).code == kExitUsage);
  CHECK(run({"gen", "3sum", "--n", "600", "--u", "1024"}).code == kExitUsage);
}

TEST_CASE("solve with oracle check") {
  const std::string path = temp_path("planted.3sum");
  REQUIRE(run({"gen", "3sum", "--n", "16", "--u", "1024", "--plant", "witness", "--seed", "3", "--out", path}).code ==
          kExitOk);
  for (const char* via : {"sd", "si", "conv", "brute"}) {
    const auto r = run({"solve", "--in", path, "--via", via, "--check"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("witness found") != std::string::npos);
    CHECK(r.out.find("check=agree") != std::string::npos);
  }
  std::filesystem::remove(path);
  CHECK(run({"solve", "--in", temp_path("missing.3sum")}).code == kExitUsage);
}

TEST_CASE("bench rows") {
  const auto r = run({"bench", "--task", "sd", "--n", "32", "--trials", "4", "--no-timing"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("task,n,gamma,delta,seed,ops,micros,result\n", 0) == 0);
  CHECK(lines(r.out) == 5);
  CHECK(run({"bench", "--task", "sd", "--n", "32", "--trials", "4", "--no-timing"}).out == r.out);
  const auto zero = run({"bench", "--task", "brute", "--n", "32", "--trials", "0"});
  CHECK(lines(zero.out) == 1);
}

TEST_CASE("selftest exit status") {
  CHECK(run({"selftest", "--quick", "--only", "3"}).code == kExitOk);
  CHECK(run({"selftest", "--quick", "--only", "6", "--inject-fault", "layout"}).code != kExitOk);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"gen", "3sum", "--bogus"}).code == kExitUsage);
  CHECK(run({"solve", "--via", "magic", "--in", "x"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("match, triangles and reduce") {
  const std::string sys = temp_path("s.setsys"), g = temp_path("g.graph"), i = temp_path("i.3sum");
  REQUIRE(run({"gen", "setsys", "--n", "16", "--out", sys}).code == kExitOk);
  REQUIRE(run({"gen", "graph", "--n", "16", "--out", g}).code == kExitOk);
  REQUIRE(run({"gen", "3sum", "--n", "16", "--out", i}).code == kExitOk);
  const auto m = run({"match", "--in", sys, "--mode", "perfect", "--check"});
  CHECK(m.code == kExitOk);
  CHECK(m.out.rfind("query,disjoint,size_delta,work,vertices\n", 0) == 0);
  CHECK(run({"triangles", "--in", g, "--check"}).code == kExitOk);
  CHECK(run({"reduce", "--in", i, "--via", "si"}).out.rfind("setsys 1", 0) == 0);
  for (const auto& p : {sys, g, i}) std::filesystem::remove(p);
}
