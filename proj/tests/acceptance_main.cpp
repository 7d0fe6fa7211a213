// One line per criterion; exit 0 iff every selected criterion passes.
//   tsr_acceptance [--quick] [--only N ...] [--skip N ...]
#include <cstdlib>
#include <iostream>
#include <string>

#include "tsr/acceptance.hpp"

int main(int argc, char** argv) {
  tsr::AcceptanceOptions options;
  std::vector<int>* target = nullptr;
  for (int k = 1; k < argc; ++k) {
    const std::string arg = argv[k];
    if (arg == "--quick") {
      options.quick = true;
    } else if (arg == "--only") {
      target = &options.only;
    } else if (arg == "--skip") {
      target = &options.skip;
    } else if (target) {
      target->push_back(std::atoi(arg.c_str()));
    } else {
      std::cerr << "usage: tsr_acceptance [--quick] [--only N ...] [--skip N ...]\n";
      return 2;
    }
  }
  int failed = 0;
  for (const auto& r : tsr::run_acceptance(options, std::cout)) failed += !r.pass;
  std::cout << (failed ? "acceptance: " + std::to_string(failed) + " failed" : std::string("acceptance: all passed"))
            << std::endl;
  return failed ? 1 : 0;
}
