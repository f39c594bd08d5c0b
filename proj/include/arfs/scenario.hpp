#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "arfs/parallel.hpp"
#include "arfs/report.hpp"

namespace arfs {

inline const std::vector<std::string> kScenarioKinds = {
    "muntz-distance", "golitschek", "decay", "arfs-criterion", "stability", "decomposition", "pt-family"};

struct ScenarioConfig {
  std::string name;
  std::string kind;
  Json params = Json::object();
  std::uint64_t seed = 0;
  Json tolerances = Json::object();
};

/// Column-major friendly table; every row has one cell per column.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
  bool empty() const noexcept { return columns.empty(); }
};

struct ScenarioResult {
  ScenarioConfig config;
  std::vector<Report> checks;
  Json data = Json::object();
  Table table;
  bool pass() const { return all_pass(checks); }
};

/**
 * Parses {"seed": N, "scenarios": [{"kind", "name"?, "seed"?, "params"?,
 * "tolerances"?}, ...]}. A scenario seed falls back to the top-level one;
 * `seed_override` replaces both. ConfigInvalid names the offending path.
 */
std::vector<ScenarioConfig> parse_config(const Json& config, std::optional<std::uint64_t> seed_override = {});
std::vector<ScenarioConfig> load_config(const std::filesystem::path& path,
                                        std::optional<std::uint64_t> seed_override = {});

/// Library failures inside a scenario become a failing "error" check;
/// malformed parameters throw ConfigInvalid.
ScenarioResult run_scenario(const ScenarioConfig& config);

/// Scenarios run concurrently; results keep the config order.
std::vector<ScenarioResult> run_experiment(const std::vector<ScenarioConfig>& configs,
                                           Execution execution = Execution::Parallel);

Json to_json(const ScenarioResult& result);
/// {"pass": bool, "reports": [...]}
Json results_to_json(const std::vector<ScenarioResult>& results);
std::string table_to_csv(const Table& table);

enum class ReportFormat { Json, Csv };
ReportFormat parse_report_format(const std::string& text);

/// Writes <out>/report.json, plus <out>/<name>.csv per tabular scenario for
/// Csv. Returns the written paths. IoError on any filesystem failure.
std::vector<std::filesystem::path> emit_report(const std::vector<ScenarioResult>& results, ReportFormat format,
                                               const std::filesystem::path& out);

}  // namespace arfs
