#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

namespace mottlab {

struct GoldenResult {
  double x = 0.0;
  double fx = 0.0;
  int evals = 0;
  bool converged = false;
};

// Golden-section minimization of a unimodal scalar function on [lo, hi].
// Terminates when the bracket span drops below tol or the evaluation
// budget is exhausted; fully deterministic.
template <class F>
GoldenResult golden_minimize(const F& f, double lo, double hi, double tol,
                             int max_evals = 200) {
  constexpr double invphi = 0.6180339887498949;
  GoldenResult res;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  res.evals = 2;
  double best_x = fc < fd ? c : d;
  double best_f = std::min(fc, fd);
  while (b - a > tol && res.evals < max_evals) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
    ++res.evals;
    if (fc < best_f) {
      best_f = fc;
      best_x = c;
    }
    if (fd < best_f) {
      best_f = fd;
      best_x = d;
    }
  }
  res.converged = (b - a) <= tol;
  res.x = best_x;
  res.fx = best_f;
  return res;
}

}  // namespace mottlab
