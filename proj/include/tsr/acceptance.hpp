#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tsr {

struct AcceptanceOptions {
  bool quick = false;     // reduced trial counts, same checks
  std::vector<int> only;  // empty: all criteria
  std::vector<int> skip;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

inline constexpr int kCriterionCount = 10;

// Runs the selected criteria in order, printing each result line to `out` as
// soon as it is known.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::ostream& out);

// "PASS  1 sd-oracle ... (detail) [1.2 s]"
void print_result(std::ostream& out, const CriterionResult& r);

}  // namespace tsr
