#ifndef UNITARY_VERIFY_HPP
#define UNITARY_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "unitary/parallel.hpp"

namespace unitary {

/// One checked claim. `hard` criteria gate the build; soft ones are trend
/// probes whose failure is reported but does not redden the run. `elapsed_s`
/// is informational only and excluded from the rendered report so that two
/// runs of the same build compare byte-identical.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  bool hard = true;
  double elapsed_s = 0;
  std::string detail;
};

struct VerifyReport {
  uint64_t seed = 0;
  std::vector<CriterionResult> results;
  bool all_hard_pass = true;
};

/// Runs the full battery (criteria 1-12). Criterion 12 re-runs 1-11 and
/// compares the rendered texts, so expect roughly double the single-pass
/// cost.
VerifyReport run_verify(uint64_t seed, Exec exec = Exec::parallel);

/// Deterministic text rendering; excludes wall times.
std::string render_report(const VerifyReport& r);

}  // namespace unitary

#endif
