#pragma once

#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>

#include <omp.h>

namespace arfs {

/// Selects the OpenMP kernel or its serial reference. Both produce identical
/// results: the only reductions are min/max with ties broken by lowest index.
enum class Execution { Serial, Parallel };

struct ArgBest {
  double value;
  std::size_t index;
};

namespace detail {

inline bool better_min(double v, std::size_t i, const ArgBest& best) {
  return v < best.value || (v == best.value && i < best.index);
}
inline bool better_max(double v, std::size_t i, const ArgBest& best) {
  return v > best.value || (v == best.value && i < best.index);
}

template <bool Minimize, class Fn>
ArgBest arg_best_serial(std::size_t count, Fn&& fn) {
  constexpr double init = Minimize ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  ArgBest best{init, count};
  for (std::size_t i = 0; i < count; ++i) {
    const double v = fn(i);
    if (std::isnan(v)) continue;
    if (Minimize ? better_min(v, i, best) : better_max(v, i, best)) best = {v, i};
  }
  return best;
}

template <bool Minimize, class Fn>
ArgBest arg_best_parallel(std::size_t count, Fn&& fn) {
  constexpr double init = Minimize ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  ArgBest best{init, count};
  const auto n = static_cast<std::ptrdiff_t>(count);
  std::exception_ptr failure;
#pragma omp parallel
  {
    ArgBest local{init, count};
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      double v = std::numeric_limits<double>::quiet_NaN();
      try {
        v = fn(idx);
      } catch (...) {
#pragma omp critical(arfs_failure)
        if (!failure) failure = std::current_exception();
      }
      if (std::isnan(v)) continue;
      if (Minimize ? better_min(v, idx, local) : better_max(v, idx, local)) local = {v, idx};
    }
#pragma omp critical(arfs_arg_best)
    {
      if (local.index < count &&
          (Minimize ? better_min(local.value, local.index, best) : better_max(local.value, local.index, best)))
        best = local;
    }
  }
  if (failure) std::rethrow_exception(failure);
  return best;
}

}  // namespace detail

/// Smallest fn(i) over [0, count); index == count when every value is NaN.
template <class Fn>
ArgBest arg_min(Execution exec, std::size_t count, Fn&& fn) {
  return exec == Execution::Parallel ? detail::arg_best_parallel<true>(count, fn)
                                     : detail::arg_best_serial<true>(count, fn);
}

template <class Fn>
ArgBest arg_max(Execution exec, std::size_t count, Fn&& fn) {
  return exec == Execution::Parallel ? detail::arg_best_parallel<false>(count, fn)
                                     : detail::arg_best_serial<false>(count, fn);
}

/// Applies fn to every index; fn must only write to slot i of its output.
template <class Fn>
void for_each_index(Execution exec, std::size_t count, Fn&& fn) {
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const auto n = static_cast<std::ptrdiff_t>(count);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(arfs_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace arfs
