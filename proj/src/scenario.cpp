#include "arfs/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "arfs/decay.hpp"
#include "arfs/error.hpp"
#include "arfs/finite.hpp"
#include "arfs/instances.hpp"
#include "arfs/json_io.hpp"
#include "arfs/muntz.hpp"
#include "arfs/representation.hpp"

namespace arfs {

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::ConfigInvalid, path + ": " + what);
}

// Typed access to one JSON object with path-qualified diagnostics.
class Fields {
 public:
  Fields(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) invalid(path_, "must be an object");
  }

  bool has(const char* key) const { return j_.contains(key); }
  const Json& raw(const char* key) const {
    if (!has(key)) invalid(at(key), "is required");
    return j_.at(key);
  }
  std::string at(const char* key) const { return path_ + "." + key; }

  double number(const char* key) const {
    const Json& v = raw(key);
    if (!v.is_number()) invalid(at(key), "must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) invalid(at(key), "must be finite");
    return x;
  }
  double number(const char* key, double fallback) const { return has(key) ? number(key) : fallback; }
  double positive(const char* key) const {
    const double x = number(key);
    if (!(x > 0)) invalid(at(key), "must be positive");
    return x;
  }
  double positive(const char* key, double fallback) const { return has(key) ? positive(key) : fallback; }

  int integer(const char* key, int lo, int hi) const {
    const Json& v = raw(key);
    if (!v.is_number_integer()) invalid(at(key), "must be an integer");
    const auto x = v.get<long long>();
    if (x < lo || x > hi) invalid(at(key), "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(x);
  }
  int integer(const char* key, int lo, int hi, int fallback) const {
    return has(key) ? integer(key, lo, hi) : fallback;
  }

  bool flag(const char* key, bool fallback) const {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_boolean()) invalid(at(key), "must be true or false");
    return j_.at(key).get<bool>();
  }

  std::vector<double> numbers(const char* key) const {
    const Json& v = raw(key);
    if (!v.is_array()) invalid(at(key), "must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) invalid(at(key), "must be an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  ExponentSet exponents(const char* key) const {
    try {
      return exponent_set_from_json(raw(key));
    } catch (const Error& e) {
      invalid(at(key), e.what());
    }
  }

  void only(std::initializer_list<const char*> allowed) const {
    for (const auto& [key, value] : j_.items()) {
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
        invalid(path_ + "." + key, "unknown field");
    }
  }

 private:
  const Json& j_;
  std::string path_;
};

Report failed(const std::string& check, const Error& e) {
  Report r;
  r.check = check;
  r.pass = false;
  r.margin = -std::numeric_limits<double>::infinity();
  r.witness = {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
  return r;
}

Report summary(const std::string& check, double margin, bool pass, Json witness = Json::object()) {
  Report r;
  r.check = check;
  r.margin = margin;
  r.pass = pass;
  r.witness = std::move(witness);
  return r;
}

// Folds per-instance reports into one: smallest margin, every witness that failed.
Report fold(const std::string& check, const std::vector<Report>& reports) {
  Report r;
  r.check = check;
  r.margin = std::numeric_limits<double>::infinity();
  Json failures = Json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    r.margin = std::min(r.margin, reports[i].margin);
    if (!reports[i].pass) {
      r.pass = false;
      failures.push_back({{"instance", i}, {"witness", reports[i].witness}});
    }
  }
  if (reports.empty()) r.margin = 0;
  r.witness = {{"instances", reports.size()}, {"failures", failures}};
  return r;
}

SubspaceFamily family_param(const Fields& p, std::uint64_t seed) {
  if (p.has("family")) {
    try {
      return family_from_json(p.raw("family"));
    } catch (const Error& e) {
      invalid(p.at("family"), e.what());
    }
  }
  if (!p.has("random_family")) invalid(p.at("family"), "give either family or random_family");
  const Fields r(p.raw("random_family"), p.at("random_family"));
  r.only({"dim", "norm", "members", "max_member_dim"});
  const int n = r.integer("dim", 1, kFiniteDimensionCap);
  NormKind kind = NormKind::L2;
  if (r.has("norm")) {
    if (!r.raw("norm").is_string()) invalid(r.at("norm"), "must be a string");
    try {
      kind = parse_norm_kind(r.raw("norm").get<std::string>());
    } catch (const Error& e) {
      invalid(r.at("norm"), e.what());
    }
  }
  const int members = r.integer("members", 1, 64, n + 1);
  const int max_dim = r.integer("max_member_dim", 1, n, std::max(1, n - 1));
  if (members * max_dim < n) invalid(r.at("members"), "too few members to span");
  instances::Rng rng(seed);
  return instances::random_spanning_family(rng, n, kind, members, max_dim);
}

double gram_or_nan(double gamma, std::span<const double> gammas) {
  try {
    return l2_distance_gram_oracle(gamma, gammas);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::IllConditioned && e.kind() != ErrorKind::DimensionCap) throw;
    return std::numeric_limits<double>::quiet_NaN();
  }
}

void run_muntz(const ScenarioConfig& cfg, ScenarioResult& out) {
  const Fields p(cfg.params, "params");
  p.only({"gamma", "gammas", "random", "max_size"});
  const Fields tol(cfg.tolerances, "tolerances");
  const double rel = tol.positive("rel", 1e-9);

  struct Instance {
    double gamma;
    std::vector<double> gammas;
  };
  std::vector<Instance> list;
  if (p.has("gammas")) {
    const double gamma = p.number("gamma");
    const auto gammas = p.numbers("gammas");
    for (std::size_t k = 1; k <= gammas.size(); ++k) list.push_back({gamma, {gammas.begin(), gammas.begin() + k}});
  } else {
    const int count = p.integer("random", 1, 100000);
    const int max_size = p.integer("max_size", 1, static_cast<int>(kGramSizeCap), 6);
    instances::Rng rng(cfg.seed);
    for (int i = 0; i < count; ++i) {
      const auto n = static_cast<std::size_t>(instances::uniform_int(rng, 1, max_size));
      auto all = instances::separated_values(rng, n + 1, 0.5, 20.0, 0.1);
      const auto pick = static_cast<std::size_t>(instances::uniform_int(rng, 0, static_cast<int>(n)));
      const double gamma = all[pick];
      all.erase(all.begin() + static_cast<std::ptrdiff_t>(pick));
      list.push_back({gamma, all});
    }
  }

  out.table.columns = {"gamma", "size", "closed_form", "gram_oracle", "rel_diff"};
  double worst = 0;
  std::size_t skipped = 0;
  for (const auto& inst : list) {
    const double closed = l2_distance_closed_form(inst.gamma, inst.gammas);
    const double gram = gram_or_nan(inst.gamma, inst.gammas);
    double diff = std::numeric_limits<double>::quiet_NaN();
    if (std::isnan(gram)) {
      ++skipped;
    } else {
      diff = std::abs(closed - gram) / std::max(std::abs(gram), 1e-300);
      worst = std::max(worst, diff);
    }
    out.table.rows.push_back({inst.gamma, inst.gammas.size(), closed, gram, diff});
  }
  out.checks.push_back(summary("closed_form_matches_gram", rel - worst, worst <= rel,
                               {{"max_rel_diff", worst}, {"instances", list.size()}, {"skipped", skipped}}));
}

void run_golitschek(const ScenarioConfig& cfg, ScenarioResult& out) {
  const Fields p(cfg.params, "params");
  p.only({"alpha", "exponents", "prefix_sweep"});
  const Fields tol(cfg.tolerances, "tolerances");
  const double sup_tol = tol.positive("sup_norm", 1e-7);
  const double slack = tol.positive("slack", 1e-6);
  const double alpha = p.positive("alpha");
  const ExponentSet exponents = p.exponents("exponents");
  if (exponents.empty()) invalid(p.at("exponents"), "must not be empty");

  std::vector<std::size_t> sizes;
  if (p.flag("prefix_sweep", false))
    for (std::size_t k = 1; k <= exponents.size(); ++k) sizes.push_back(k);
  else
    sizes.push_back(exponents.size());

  out.table.columns = {"size", "beta", "bound", "density_gap_bound", "certified_error_lower", "certified_error_upper"};
  std::vector<Report> sound;
  for (std::size_t k : sizes) {
    const ExponentSet e = exponents.prefix(k);
    const GolitschekResult g = golitschek_approximant(alpha, e, sup_tol);
    const bool dominated = e.min() >= alpha;
    const double gap = dominated ? density_gap_bound(alpha, e) : std::numeric_limits<double>::quiet_NaN();
    out.table.rows.push_back({k, e.beta(), g.bound, gap, g.error.lower, g.error.upper});
    sound.push_back(summary("golitschek_soundness", g.bound + slack - g.error.upper, g.error.upper <= g.bound + slack,
                            {{"size", k}, {"bound", g.bound}, {"certified_error_upper", g.error.upper}}));
    if (k == exponents.size()) out.data["result"] = to_json(g);
  }
  out.checks.push_back(fold("golitschek_soundness", sound));
}

std::vector<double> spaced(double lo, double hi, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i)
    out.push_back(count == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
  return out;
}

void run_decay(const ScenarioConfig& cfg, ScenarioResult& out) {
  const Fields p(cfg.params, "params");
  p.only({"delta", "M", "delta_range", "M_range", "grid", "random_sums", "max_terms"});
  const Fields tol(cfg.tolerances, "tolerances");
  const double identity_tol = tol.positive("identity", 1e-12);
  const double bound_tol = tol.positive("bound", 1e-9);

  auto range = [&](const char* single, const char* key) {
    if (!p.has(key)) return std::vector<double>{p.positive(single)};
    const auto r = p.numbers(key);
    if (r.size() != 2 || !(r[0] > 0) || !(r[1] >= r[0])) invalid(p.at(key), "must be [lo, hi] with 0 < lo <= hi");
    return spaced(r[0], r[1], p.integer("grid", 1, 1000, 20));
  };
  const auto deltas = range("delta", "delta_range");
  const auto Ms = range("M", "M_range");

  out.table.columns = {"delta", "M", "a", "b", "c", "m", "threshold", "identity_residual"};
  double worst = 0;
  for (double d : deltas)
    for (double M : Ms) {
      const BoundConstants k = decay_constants(d, M);
      const double res = k.identity_residual();
      worst = std::max(worst, res);
      out.table.rows.push_back({d, M, k.a, k.b, k.c, k.m, k.threshold(), res});
    }
  if (deltas.size() == 1 && Ms.size() == 1) {
    const BoundConstants k = decay_constants(deltas[0], Ms[0]);
    out.data["constants"] = {{"a", k.a}, {"b", k.b}, {"c", k.c}, {"m", k.m}, {"threshold", k.threshold()}};
  }
  out.checks.push_back(summary("constants_identity", identity_tol - worst, worst <= identity_tol,
                               {{"max_residual", worst}, {"grid_points", deltas.size() * Ms.size()}}));

  const int sums = p.integer("random_sums", 0, 100000, 0);
  if (sums == 0) return;
  const auto max_terms = static_cast<std::size_t>(p.integer("max_terms", 1, 12, 5));
  instances::Rng rng(cfg.seed);
  std::vector<Report> coef;
  std::vector<Report> decay;
  for (int i = 0; i < sums; ++i) {
    const auto adm = instances::random_admissible(rng, max_terms);
    std::vector<ExpSum::Term> terms;
    for (double a : adm.alphas) terms.push_back({instances::uniform(rng, -1.0, 1.0), a});
    const ExpSum f(std::move(terms));
    const BoundConstants k = decay_constants(adm.delta, adm.M);
    const std::vector<double> ts = {k.threshold(), k.threshold() + 1, k.threshold() + 5, k.threshold() + 20};
    coef.push_back(verify_coefficient_bound(f, adm.delta, adm.M, bound_tol));
    decay.push_back(verify_decay(f, adm.delta, adm.M, ts, bound_tol));
  }
  out.checks.push_back(fold("coefficient_bound", coef));
  out.checks.push_back(fold("decay_bound", decay));
}

void run_criterion(const ScenarioConfig& cfg, ScenarioResult& out) {
  const Fields p(cfg.params, "params");
  p.only({"family", "random_family", "expect_epsilon_star", "delete", "subadditive"});
  const Fields tol(cfg.tolerances, "tolerances");
  const double eps_tol = tol.positive("epsilon_star", 1e-6);
  const double expect_tol = tol.positive("expect", 1e-4);
  const double arfs_tol = tol.positive("arfs", 1e-6);
  const SubspaceFamily family = family_param(p, cfg.seed);

  EpsilonOptions opt;
  opt.tol = eps_tol;
  opt.seed = cfg.seed;
  const EpsilonStar eps = epsilon_star_detail(family, opt);
  const bool arfs = eps.value > arfs_tol;
  Json restrictions = Json::object();
  if (eps.phi.size() > 0) {
    const FamilyEvaluator ev(family);
    for (std::size_t i = 0; i < family.size(); ++i) restrictions[family.members[i].label] = ev.restriction(i, eps.phi);
  }
  out.data = {{"family", to_json(family)},
              {"epsilon_star", eps.value},
              {"phi", to_json(eps.phi)},
              {"spanning", eps.spanning},
              {"arfs", arfs},
              {"restrictions", restrictions}};
  out.checks.push_back(summary("criterion_matches_spanning", arfs == eps.spanning ? 0.0 : -1.0, arfs == eps.spanning,
                               {{"epsilon_star", eps.value}, {"spanning", eps.spanning}}));
  if (p.has("expect_epsilon_star")) {
    const double want = p.number("expect_epsilon_star");
    const double diff = std::abs(eps.value - want);
    out.checks.push_back(summary("epsilon_star_expected", expect_tol - diff, diff <= expect_tol,
                                 {{"expected", want}, {"value", eps.value}}));
  }
  if (p.has("delete")) {
    const Json& labels = p.raw("delete");
    if (!labels.is_array()) invalid(p.at("delete"), "must be an array of labels");
    std::set<std::string> deleted;
    for (const auto& l : labels) {
      if (!l.is_string()) invalid(p.at("delete"), "must be an array of labels");
      deleted.insert(l.get<std::string>());
    }
    out.checks.push_back(subfamily_delete_check(family, deleted, eps_tol));
  }
  if (p.flag("subadditive", false)) {
    std::vector<Report> all;
    for (int i = 0; i < family.space.dim; ++i)
      all.push_back(subadditive_bound_check(family, SubadditiveFunctional::seminorm(Vector::Unit(family.space.dim, i))));
    for (const auto& m : family.members)
      all.push_back(subadditive_bound_check(family, SubadditiveFunctional::distance_to(m.subspace)));
    out.checks.push_back(fold("subadditive_bound", all));
  }
}

void run_stability(const ScenarioConfig& cfg, ScenarioResult& out) {
  const Fields p(cfg.params, "params");
  p.only({"family", "random_family", "fractions", "trials"});
  const Fields tol(cfg.tolerances, "tolerances");
  const double slack = tol.positive("slack", 2e-4);
  const SubspaceFamily family = family_param(p, cfg.seed);
  const std::vector<double> fractions = p.has("fractions") ? p.numbers("fractions") : std::vector<double>{0.1, 0.5};
  for (double f : fractions)
    if (!(f > 0 && f < 1)) invalid(p.at("fractions"), "entries must lie in (0, 1)");
  const int trials = p.integer("trials", 1, 1000, 1);

  const double eps = epsilon_star(family);
  out.data = {{"family", to_json(family)}, {"epsilon_star", eps}};
  if (!(eps > 1e-6)) throw Error(ErrorKind::NotAnARFS, "stability needs an ARFS (eps* > 0)");
  out.table.columns = {"fraction", "trial", "r", "epsilon_star", "perturbed", "floor", "margin"};
  std::vector<Report> all;
  for (double f : fractions)
    for (int trial = 0; trial < trials; ++trial) {
      const double r = f * eps;
      const auto perturbed = perturb_family(family, r, cfg.seed + static_cast<std::uint64_t>(trial));
      const double tilde = epsilon_star(perturbed);
      const double floor = stability_floor(eps, r);
      const double margin = tilde - floor;
      out.table.rows.push_back({f, trial, r, eps, tilde, floor, margin});
      all.push_back(summary("stability_floor", margin + slack, margin >= -slack, {{"r", r}, {"perturbed", tilde}}));
    }
  out.checks.push_back(fold("stability_floor", all));
}

void run_decomposition(const ScenarioConfig& cfg, ScenarioResult& out) {
  const Fields p(cfg.params, "params");
  p.only({"family", "random_family", "x", "eps", "samples"});
  const Fields tol(cfg.tolerances, "tolerances");
  const double solve_tol = tol.positive("solver", 1e-8);
  const double greedy_tol = tol.positive("greedy", 1e-10);
  const double duality = tol.positive("duality", 0.05);
  const SubspaceFamily family = family_param(p, cfg.seed);
  const double eps = p.positive("eps", 0.1);

  out.data["family"] = to_json(family);
  if (p.has("x")) {
    Vector x;
    try {
      x = vector_from_json(p.raw("x"));
    } catch (const Error& e) {
      invalid(p.at("x"), e.what());
    }
    if (x.size() != family.space.dim) invalid(p.at("x"), "has the wrong length");
    const Decomposition best = min_cost_decompose(x, family, solve_tol);
    const Decomposition greedy = greedy_decompose(x, family, eps, greedy_tol);
    const double norm = family.space.norm(x);
    out.data["min_cost"] = to_json(best);
    out.data["min_cost"]["lower_bound"] = best.lower_bound;
    out.data["greedy"] = to_json(greedy);
    out.data["greedy"]["schedule_met"] = greedy.schedule_met;
    out.data["greedy"]["steps"] = greedy.steps;
    const double low = best.cost - norm;
    const double high = greedy.cost + solve_tol - best.cost;
    out.checks.push_back(summary("optimality_sandwich", std::min(low, high), low >= -1e-12 && high >= 0,
                                 {{"norm", norm}, {"min_cost", best.cost}, {"greedy_cost", greedy.cost}}));
    // The eps guarantee is a statement about runs that keep the step schedule.
    if (greedy.schedule_met) {
      const double slack = norm + eps + greedy_tol - greedy.cost;
      out.checks.push_back(summary("greedy_bound", slack, slack >= 0, {{"norm", norm}, {"eps", eps}, {"cost", greedy.cost}}));
    }
  }

  const int samples = p.integer("samples", 0, 1000000, 0);
  if (samples == 0) return;
  const double inv = 1.0 / epsilon_star(family);
  const RepresentationConstant m = representation_constant_detail(family, solve_tol, static_cast<std::size_t>(samples), cfg.seed);
  out.data["representation_constant"] = m.value;
  out.data["worst_direction"] = to_json(m.worst);
  out.data["inverse_epsilon_star"] = inv;
  out.checks.push_back(summary("duality_upper", inv * (1 + 1e-6) - m.value, m.value <= inv * (1 + 1e-6),
                               {{"representation_constant", m.value}, {"inverse_epsilon_star", inv}}));
  if (family.space.kind == NormKind::L2) {
    const double gap = std::abs(m.value - inv) / inv;
    out.checks.push_back(summary("duality_within", duality - gap, gap <= duality, {{"relative_gap", gap}}));
  }
}

void run_pt_family(const ScenarioConfig& cfg, ScenarioResult& out) {
  const Fields p(cfg.params, "params");
  p.only({"delta", "M", "families", "t_from", "t_to", "steps"});
  const Fields tol(cfg.tolerances, "tolerances");
  const double eval_tol = tol.positive("point_eval", 1e-6);
  const double delta = p.positive("delta");
  const double M = p.positive("M");
  const Json& fam = p.raw("families");
  if (!fam.is_array() || fam.empty()) invalid(p.at("families"), "must be a non-empty array of exponent sets");
  std::vector<ExponentSet> families;
  for (const auto& e : fam) {
    try {
      families.push_back(exponent_set_from_json(e));
    } catch (const Error& err) {
      invalid(p.at("families"), err.what());
    }
  }
  const BoundConstants k = decay_constants(delta, M);
  const double from = p.number("t_from", k.threshold());
  const double to = p.number("t_to", from + 10);
  const int steps = p.integer("steps", 1, 10000, 11);
  if (!(to >= from)) invalid(p.at("t_to"), "must be >= t_from");

  out.table.columns = {"t", "max_restriction", "bound", "margin", "argmax"};
  std::vector<Report> all;
  for (int i = 0; i < steps; ++i) {
    const double t = steps == 1 ? from : from + (to - from) * i / (steps - 1);
    Report r = family_pt_bound(families, delta, M, t, eval_tol);
    out.table.rows.push_back({t, r.witness["max"], r.witness["bound"], r.margin, r.witness["argmax"]});
    all.push_back(std::move(r));
  }
  out.data["constants"] = {{"c", k.c}, {"m", k.m}, {"threshold", k.threshold()}};
  out.checks.push_back(fold("family_point_evaluation_bound", all));
}

std::string csv_cell(const Json& v) {
  if (v.is_number_float()) {
    const std::string s = format_number(v.get<double>());
    return s == "null" ? "" : s;
  }
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return v.dump();
}

std::string file_stem(const std::string& name) {
  std::string out;
  for (char c : name) out += std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ? c : '_';
  return out;
}

std::uint64_t seed_value(const Json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
  invalid(path, "must be a non-negative integer");
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw Error(ErrorKind::IoError, "failed writing " + path.string());
}

}  // namespace

std::vector<ScenarioConfig> parse_config(const Json& config, std::optional<std::uint64_t> seed_override) {
  const Fields top(config, "config");
  top.only({"seed", "scenarios"});
  std::optional<std::uint64_t> base = seed_override;
  if (!base && top.has("seed")) {
    base = seed_value(top.raw("seed"), top.at("seed"));
  }
  const Json& list = top.raw("scenarios");
  if (!list.is_array()) invalid(top.at("scenarios"), "must be an array");

  std::vector<ScenarioConfig> out;
  std::set<std::string> names;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = "config.scenarios[" + std::to_string(i) + "]";
    const Fields s(list[i], path);
    s.only({"kind", "name", "seed", "params", "tolerances"});
    ScenarioConfig c;
    if (!s.raw("kind").is_string()) invalid(s.at("kind"), "must be a string");
    c.kind = s.raw("kind").get<std::string>();
    if (std::find(kScenarioKinds.begin(), kScenarioKinds.end(), c.kind) == kScenarioKinds.end())
      invalid(s.at("kind"), "unknown scenario kind '" + c.kind + "'");
    c.name = c.kind + "-" + std::to_string(i);
    if (s.has("name")) {
      if (!s.raw("name").is_string() || s.raw("name").get<std::string>().empty()) invalid(s.at("name"), "must be a non-empty string");
      c.name = s.raw("name").get<std::string>();
    }
    if (!names.insert(file_stem(c.name)).second) invalid(s.at("name"), "duplicate scenario name '" + c.name + "'");
    if (seed_override) {
      c.seed = *seed_override;
    } else if (s.has("seed")) {
      c.seed = seed_value(s.raw("seed"), s.at("seed"));
    } else if (base) {
      c.seed = *base;
    } else {
      invalid(s.at("seed"), "is required (here or at the top level)");
    }
    if (s.has("params")) {
      c.params = s.raw("params");
      if (!c.params.is_object()) invalid(s.at("params"), "must be an object");
    }
    if (s.has("tolerances")) {
      c.tolerances = s.raw("tolerances");
      if (!c.tolerances.is_object()) invalid(s.at("tolerances"), "must be an object");
      for (const auto& [key, value] : c.tolerances.items())
        if (!value.is_number() || !(value.get<double>() > 0))
          invalid(s.at("tolerances") + "." + key, "must be a positive number");
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<ScenarioConfig> load_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::IoError, "cannot read " + path.string());
  Json j;
  try {
    j = Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ConfigInvalid, path.string() + ": " + e.what());
  }
  return parse_config(j, seed_override);
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  ScenarioResult out;
  out.config = config;
  try {
    if (config.kind == "muntz-distance") run_muntz(config, out);
    else if (config.kind == "golitschek") run_golitschek(config, out);
    else if (config.kind == "decay") run_decay(config, out);
    else if (config.kind == "arfs-criterion") run_criterion(config, out);
    else if (config.kind == "stability") run_stability(config, out);
    else if (config.kind == "decomposition") run_decomposition(config, out);
    else if (config.kind == "pt-family") run_pt_family(config, out);
    else invalid("kind", "unknown scenario kind '" + config.kind + "'");
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ConfigInvalid)
      throw Error(ErrorKind::ConfigInvalid, "scenario '" + config.name + "' " + e.what());
    out.checks.push_back(failed("error", e));
  }
  return out;
}

std::vector<ScenarioResult> run_experiment(const std::vector<ScenarioConfig>& configs, Execution execution) {
  std::vector<ScenarioResult> out(configs.size());
  for_each_index(execution, configs.size(), [&](std::size_t i) { out[i] = run_scenario(configs[i]); });
  return out;
}

Json to_json(const ScenarioResult& result) {
  Json checks = Json::array();
  for (const auto& c : result.checks) checks.push_back(to_json(c));
  Json j = {{"name", result.config.name},
            {"kind", result.config.kind},
            {"seed", result.config.seed},
            {"params", result.config.params},
            {"tolerances", result.config.tolerances},
            {"pass", result.pass()},
            {"checks", checks},
            {"data", result.data}};
  if (!result.table.empty()) j["table"] = {{"columns", result.table.columns}, {"rows", result.table.rows}};
  return j;
}

Json results_to_json(const std::vector<ScenarioResult>& results) {
  Json reports = Json::array();
  bool pass = true;
  for (const auto& r : results) {
    reports.push_back(to_json(r));
    pass = pass && r.pass();
  }
  return {{"pass", pass}, {"reports", reports}};
}

std::string table_to_csv(const Table& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << "\n";
  }
  return out.str();
}

ReportFormat parse_report_format(const std::string& text) {
  if (text == "json") return ReportFormat::Json;
  if (text == "csv") return ReportFormat::Csv;
  throw Error(ErrorKind::ConfigInvalid, "format must be json or csv, got '" + text + "'");
}

std::vector<std::filesystem::path> emit_report(const std::vector<ScenarioResult>& results, ReportFormat format,
                                               const std::filesystem::path& out) {
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + out.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  written.push_back(out / "report.json");
  write_file(written.back(), dump_stable(results_to_json(results)));
  if (format == ReportFormat::Csv)
    for (const auto& r : results) {
      if (r.table.empty()) continue;
      written.push_back(out / (file_stem(r.config.name) + ".csv"));
      write_file(written.back(), table_to_csv(r.table));
    }
  return written;
}

}  // namespace arfs
