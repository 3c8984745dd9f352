#pragma once

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "nakamoto/errors.hpp"

namespace nakamoto {

// Root of f on [lo, hi] (f(lo), f(hi) must differ in sign) to relative tolerance.
template <class F>
double find_root(F&& f, double lo, double hi, double rel_tol = 1e-12,
                 std::uintmax_t max_iter = 500) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw NoRoot("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  auto tol = [rel_tol](double a, double b) {
    return std::abs(b - a) <= rel_tol * std::max(std::abs(a), std::abs(b));
  };
  std::uintmax_t iters = max_iter;
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  if (iters >= max_iter) throw NoRoot("root finder did not converge");
  return 0.5 * (a + b);
}

// Doubles `hi` from `start` until f changes sign relative to f(lo). Returns the bracket.
template <class F>
std::pair<double, double> expand_bracket(F&& f, double lo, double start, int max_doublings = 200) {
  const bool lo_positive = f(lo) > 0.0;
  double hi = start;
  for (int i = 0; i < max_doublings; ++i) {
    const double fh = f(hi);
    if (fh == 0.0 || (fh > 0.0) != lo_positive) return {lo, hi};
    lo = hi;
    hi *= 2.0;
  }
  throw NoRoot("bracket expansion failed");
}

}  // namespace nakamoto
