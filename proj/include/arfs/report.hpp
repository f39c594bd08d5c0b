#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace arfs {

using Json = nlohmann::json;

/// Outcome of one embedded check. Checks never assert; callers aggregate.
struct Report {
  std::string check;
  bool pass = true;
  double margin = 0;  ///< >= 0 when the check holds; the smallest slack observed
  Json witness = Json::object();
};

Json to_json(const Report& report);
Report report_from_json(const Json& j);

bool all_pass(const std::vector<Report>& reports);

}  // namespace arfs
