#pragma once

#include <string>
#include <vector>

#include "arfs/parallel.hpp"

namespace arfs {

struct CriterionOutcome {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

inline constexpr int kCriterionCount = 12;

/// Runs one acceptance criterion (1..12). Library errors count as failures.
CriterionOutcome run_criterion(int id, Execution execution = Execution::Parallel);
std::vector<CriterionOutcome> run_acceptance(Execution execution = Execution::Parallel);

/// "PASS  01 name  detail (1.2s)"
std::string format_outcome(const CriterionOutcome& outcome);

}  // namespace arfs
