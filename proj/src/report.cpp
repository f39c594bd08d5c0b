#include "arfs/report.hpp"

#include <algorithm>

namespace arfs {

Json to_json(const Report& report) {
  return Json{{"check", report.check}, {"pass", report.pass}, {"margin", report.margin}, {"witness", report.witness}};
}

Report report_from_json(const Json& j) {
  Report r;
  r.check = j.at("check").get<std::string>();
  r.pass = j.at("pass").get<bool>();
  r.margin = j.at("margin").is_null() ? 0.0 : j.at("margin").get<double>();
  r.witness = j.value("witness", Json::object());
  return r;
}

bool all_pass(const std::vector<Report>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.pass; });
}

}  // namespace arfs
