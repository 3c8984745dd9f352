#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library code paths they are used to check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

// E[sum of the k largest of n iid U(0,1)] = sum_{j=1}^{min(k,n)} (n+1-j)/(n+1).
inline double top_k_uniform_sum(int n, int k) {
  double s = 0.0;
  for (int j = 1; j <= std::min(k, n); ++j) s += static_cast<double>(n + 1 - j) / (n + 1);
  return s;
}

// Same with a Poisson(lambda) number of arrivals.
inline double top_k_uniform_sum_poisson(double lambda, int k) {
  double total = 0.0;
  double p = std::exp(-lambda);
  const int n_max = static_cast<int>(lambda + 20.0 * std::sqrt(lambda + 1.0) + 50.0);
  for (int n = 0; n <= n_max; ++n) {
    total += p * top_k_uniform_sum(n, k);
    p *= lambda / (n + 1);
  }
  return total;
}

inline double central_difference(const std::function<double(double)>& f, double x, double step) {
  return (f(x + step) - f(x - step)) / (2.0 * step);
}

// argmax of f over a uniform grid.
inline double grid_argmax(const std::function<double(double)>& f, double lo, double hi, double step) {
  double best_x = lo;
  double best = f(lo);
  for (double x = lo; x <= hi; x += step) {
    const double v = f(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  return best_x;
}

// Expected hitting time of lead +1 for a continuous-time walk, by solving the
// embedded chain on a truncated lead space {-m, ..., 0} with reflection at -m.
inline double race_hitting_time_truncated(double up_rate, double down_rate, int m) {
  const double total = up_rate + down_rate;
  const double p = up_rate / total;
  const double q = 1.0 - p;
  const double dt = 1.0 / total;
  // E_i = dt + p E_{i+1} + q E_{i-1}, E_1 = 0, E_{-m} = dt + p E_{-m+1} + q E_{-m}.
  // Thomas algorithm over i = -m..0.
  const int n = m + 1;
  std::vector<double> a(n), b(n), c(n), d(n, dt);
  for (int j = 0; j < n; ++j) {
    a[j] = j == 0 ? 0.0 : -q;
    b[j] = 1.0 - (j == 0 ? q : 0.0);
    c[j] = j == n - 1 ? 0.0 : -p;
  }
  for (int j = 1; j < n; ++j) {
    const double w = a[j] / b[j - 1];
    b[j] -= w * c[j - 1];
    d[j] -= w * d[j - 1];
  }
  std::vector<double> e(n);
  e[n - 1] = d[n - 1] / b[n - 1];
  for (int j = n - 2; j >= 0; --j) e[j] = (d[j] - c[j] * e[j + 1]) / b[j];
  return e[n - 1];
}

}  // namespace oracle
