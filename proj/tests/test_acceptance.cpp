// One line per acceptance criterion; exit status 1 if any fails.

#include <cstdio>

#include "arfs/acceptance.hpp"
#include "arfs/error.hpp"

int main() {
  arfs::set_warnings_enabled(false);
  int failures = 0;
  for (int id = 1; id <= arfs::kCriterionCount; ++id) {
    const auto outcome = arfs::run_criterion(id);
    std::printf("%s\n", arfs::format_outcome(outcome).c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  std::printf("%d/%d criteria pass\n", arfs::kCriterionCount - failures, arfs::kCriterionCount);
  return failures == 0 ? 0 : 1;
}
