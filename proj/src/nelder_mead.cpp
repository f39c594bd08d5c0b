#include "arfs/nelder_mead.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace arfs {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& fn, const Eigen::VectorXd& start,
                             double initial_step, double xtol, double ftol, int max_iterations) {
  const auto n = start.size();
  std::vector<Eigen::VectorXd> simplex(n + 1, start);
  std::vector<double> values(n + 1);
  for (Eigen::Index i = 0; i < n; ++i) simplex[i + 1][i] += initial_step;
  for (Eigen::Index i = 0; i <= n; ++i) values[i] = fn(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  int it = 0;
  for (; it < max_iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    {
      std::vector<Eigen::VectorXd> s2;
      std::vector<double> v2;
      for (auto k : order) {
        s2.push_back(simplex[k]);
        v2.push_back(values[k]);
      }
      simplex.swap(s2);
      values.swap(v2);
    }
    double diameter = 0;
    for (Eigen::Index i = 1; i <= n; ++i)
      diameter = std::max(diameter, (simplex[i] - simplex[0]).lpNorm<Eigen::Infinity>());
    if (diameter <= xtol && values[n] - values[0] <= ftol) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) centroid += simplex[i];
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd reflected = centroid + (centroid - simplex[n]);
    const double fr = fn(reflected);
    if (fr < values[0]) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - simplex[n]);
      const double fe = fn(expanded);
      if (fe < fr) {
        simplex[n] = expanded;
        values[n] = fe;
      } else {
        simplex[n] = reflected;
        values[n] = fr;
      }
      continue;
    }
    if (fr < values[n - 1]) {
      simplex[n] = reflected;
      values[n] = fr;
      continue;
    }
    const bool outside = fr < values[n];
    const Eigen::VectorXd contracted =
        outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                : Eigen::VectorXd(centroid + 0.5 * (simplex[n] - centroid));
    const double fc = fn(contracted);
    if (fc < (outside ? fr : values[n])) {
      simplex[n] = contracted;
      values[n] = fc;
      continue;
    }
    for (Eigen::Index i = 1; i <= n; ++i) {
      simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0]);
      values[i] = fn(simplex[i]);
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  return {simplex[best], values[best], it};
}

}  // namespace arfs
