// arfs-lab: batch scenario runner and acceptance suite.
//
//   arfs-lab run --config <path> --out <dir> [--seed N] [--format json|csv]
//   arfs-lab accept [--only N]...
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 invalid config or
// arguments, 3 I/O failure. ARFS_LAB_THREADS caps the OpenMP thread count.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "arfs/acceptance.hpp"
#include "arfs/error.hpp"
#include "arfs/scenario.hpp"

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

int exit_code(arfs::ErrorKind kind) {
  switch (kind) {
    case arfs::ErrorKind::ConfigInvalid:
      return kExitConfig;
    case arfs::ErrorKind::IoError:
      return kExitIo;
    default:
      return kExitCheckFailed;
  }
}

bool apply_thread_cap() {
  const char* env = std::getenv("ARFS_LAB_THREADS");
  if (!env || !*env) return true;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1 || n > 4096) {
    std::cerr << "ARFS_LAB_THREADS must be a positive integer, got '" << env << "'\n";
    return false;
  }
  omp_set_num_threads(static_cast<int>(n));
  return true;
}

int run(const std::string& config, const std::string& out, std::optional<std::uint64_t> seed,
        const std::string& format) {
  const auto fmt = arfs::parse_report_format(format);
  const auto scenarios = arfs::load_config(config, seed);
  const auto results = arfs::run_experiment(scenarios);
  for (const auto& path : arfs::emit_report(results, fmt, out)) std::cout << "wrote " << path.string() << "\n";
  int failed = 0;
  for (const auto& r : results) {
    if (r.pass()) continue;
    ++failed;
    for (const auto& c : r.checks)
      if (!c.pass) std::cerr << "FAIL " << r.config.name << " " << c.check << " margin " << c.margin << "\n";
  }
  std::cout << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " scenarios pass\n";
  return failed == 0 ? 0 : kExitCheckFailed;
}

int accept(const std::vector<int>& only) {
  int failed = 0;
  int ran = 0;
  for (int id = 1; id <= arfs::kCriterionCount; ++id) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto outcome = arfs::run_criterion(id);
    std::cout << arfs::format_outcome(outcome) << std::endl;
    ++ran;
    if (!outcome.pass) ++failed;
  }
  std::cout << ran - failed << "/" << ran << " criteria pass\n";
  return failed == 0 ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batch runner for subspace-family and exponential-sum experiments"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "run the scenarios in a config file");
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  run_cmd->add_option("--config", config, "scenario config (JSON)")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", out, "output directory")->required();
  run_cmd->add_option("--seed", seed, "override every scenario seed");
  run_cmd->add_option("--format", format, "json, or csv for tables alongside report.json")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* accept_cmd = app.add_subcommand("accept", "run the acceptance suite");
  std::vector<int> only;
  accept_cmd->add_option("--only", only, "criterion ids to run")->check(CLI::Range(1, arfs::kCriterionCount));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  if (!apply_thread_cap()) return kExitConfig;
  arfs::set_warnings_enabled(false);

  try {
    if (*run_cmd) return run(config, out, seed, format);
    return accept(only);
  } catch (const arfs::Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e.kind());
  }
}
