#pragma once

#include <string>

#include "arfs/expsum.hpp"
#include "arfs/muntz.hpp"
#include "arfs/normed_space.hpp"
#include "arfs/report.hpp"
#include "arfs/representation.hpp"

namespace arfs {

/// [alpha_1, ...]
Json to_json(const ExponentSet& exponents);
ExponentSet exponent_set_from_json(const Json& j);

/// [{"a": coef, "alpha": exponent}, ...]
Json to_json(const ExpSum& f);
ExpSum expsum_from_json(const Json& j);

/// {"approximant": ExpSum, "bound", "certified_error_lower", "certified_error_upper"}
Json to_json(const GolitschekResult& result);

/// {"dim": n, "norm": "l1|l2|linf", "members": [{"label", "basis": [[column], ...]}]}
Json to_json(const SubspaceFamily& family);
SubspaceFamily family_from_json(const Json& j);

/// {"parts": [{"label", "vector", "norm"}], "cost", "residual"}
Json to_json(const Decomposition& d);

Json to_json(const Vector& v);
Vector vector_from_json(const Json& j);

/// Serializes with sorted keys, two-space indent and every floating value
/// printed with 12 significant digits; non-finite values become null.
std::string dump_stable(const Json& j);
/// 12 significant digits, the same text dump_stable uses.
std::string format_number(double x);

}  // namespace arfs
