#include "arfs/expsum.hpp"

#include <numeric>

namespace arfs {

ExponentSet::ExponentSet(std::vector<double> alphas) : alphas_(std::move(alphas)) {
  for (double a : alphas_)
    if (!(a > 0) || !std::isfinite(a))
      throw Error(ErrorKind::DegenerateInput, "exponents must be finite and positive");
  std::sort(alphas_.begin(), alphas_.end());
  for (std::size_t i = 1; i < alphas_.size(); ++i)
    if (exponents_coincide(alphas_[i - 1], alphas_[i]))
      throw Error(ErrorKind::DegenerateInput, "exponents must be pairwise distinct");
}

double ExponentSet::beta() const {
  if (alphas_.empty()) throw Error(ErrorKind::PreconditionViolated, "beta of an empty exponent set");
  return std::accumulate(alphas_.begin(), alphas_.end(), 0.0, [](double s, double a) { return s + 1.0 / a; });
}

double ExponentSet::gap() const noexcept {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < alphas_.size(); ++i) g = std::min(g, alphas_[i] - alphas_[i - 1]);
  return g;
}

ExponentSet ExponentSet::prefix(std::size_t count) const {
  return ExponentSet(std::vector<double>(alphas_.begin(), alphas_.begin() + std::min(count, alphas_.size())));
}

double beta(const ExponentSet& exponents) { return exponents.beta(); }

bool gap_check(const ExponentSet& exponents, double delta) {
  if (!(delta > 0)) throw Error(ErrorKind::PreconditionViolated, "gap_check requires delta > 0");
  // Relative slack absorbs rounding in generated exponent ladders.
  return exponents.gap() >= delta * (1.0 - 1e-12);
}

}  // namespace arfs
