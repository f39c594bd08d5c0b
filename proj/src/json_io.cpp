#include "arfs/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "arfs/error.hpp"

namespace arfs {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ConfigInvalid, what); }

double number(const Json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

void dump(const Json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        dump(value, depth + 1, out);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump(j[i], depth + 1, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump(j[i], depth + 1, out);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string format_number(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string dump_stable(const Json& j) {
  std::string out;
  dump(j, 0, out);
  out += "\n";
  return out;
}

Json to_json(const ExponentSet& exponents) {
  return Json(std::vector<double>(exponents.alphas().begin(), exponents.alphas().end()));
}

ExponentSet exponent_set_from_json(const Json& j) {
  if (!j.is_array()) bad("exponent set must be an array of numbers");
  std::vector<double> alphas;
  for (const auto& e : j) alphas.push_back(number(e, "exponent"));
  try {
    return ExponentSet(std::move(alphas));
  } catch (const Error& e) {
    bad(e.what());
  }
}

Json to_json(const ExpSum& f) {
  Json out = Json::array();
  for (const auto& term : f.terms()) out.push_back({{"a", term.coef}, {"alpha", term.alpha}});
  return out;
}

ExpSum expsum_from_json(const Json& j) {
  if (!j.is_array()) bad("exponential sum must be an array of {a, alpha}");
  std::vector<ExpSum::Term> terms;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("a") || !e.contains("alpha")) bad("exponential sum term needs a and alpha");
    terms.push_back({number(e["a"], "a"), number(e["alpha"], "alpha")});
  }
  try {
    return ExpSum(std::move(terms));
  } catch (const Error& e) {
    bad(e.what());
  }
}

Json to_json(const GolitschekResult& result) {
  return {{"approximant", to_json(result.approximant)},
          {"bound", result.bound},
          {"certified_error_lower", result.error.lower},
          {"certified_error_upper", result.error.upper}};
}

Json to_json(const Vector& v) { return Json(std::vector<double>(v.data(), v.data() + v.size())); }

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) bad("vector must be an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], "vector entry");
  return v;
}

Json to_json(const SubspaceFamily& family) {
  Json members = Json::array();
  for (const auto& m : family.members) {
    Json basis = Json::array();
    const Matrix& b = m.subspace.basis();
    for (Eigen::Index c = 0; c < b.cols(); ++c) basis.push_back(to_json(Vector(b.col(c))));
    members.push_back({{"label", m.label}, {"basis", basis}});
  }
  return {{"dim", family.space.dim}, {"norm", to_string(family.space.kind)}, {"members", members}};
}

SubspaceFamily family_from_json(const Json& j) {
  if (!j.is_object()) bad("family must be an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<int>() < 1) bad("family.dim must be a positive integer");
  if (!j.contains("norm") || !j["norm"].is_string()) bad("family.norm must be one of l1, l2, linf");
  if (!j.contains("members") || !j["members"].is_array()) bad("family.members must be an array");
  const int n = j["dim"].get<int>();
  const NormedSpace space(n, parse_norm_kind(j["norm"].get<std::string>()));
  std::vector<Member> members;
  for (const auto& m : j["members"]) {
    if (!m.is_object() || !m.contains("label") || !m["label"].is_string()) bad("family member needs a string label");
    if (!m.contains("basis") || !m["basis"].is_array()) bad("family member needs a basis array");
    std::vector<Vector> columns;
    for (const auto& col : m["basis"]) {
      Vector v = vector_from_json(col);
      if (v.size() != n) bad("basis vector of member " + m["label"].get<std::string>() + " has the wrong length");
      columns.push_back(std::move(v));
    }
    try {
      members.push_back({m["label"].get<std::string>(), Subspace(n, columns)});
    } catch (const Error& e) {
      bad("member " + m["label"].get<std::string>() + ": " + e.what());
    }
  }
  return SubspaceFamily(space, std::move(members));
}

Json to_json(const Decomposition& d) {
  Json parts = Json::array();
  for (const auto& p : d.parts) parts.push_back({{"label", p.label}, {"vector", to_json(p.vector)}, {"norm", p.norm}});
  return {{"parts", parts}, {"cost", d.cost}, {"residual", d.residual}};
}

}  // namespace arfs
