// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <string>

#include "wiretap/config.hpp"

namespace wiretap {

/// Boundary of the set {x : pred(x)} for a predicate that is true on
/// [lo, x*] and false beyond. Requires pred(lo) and !pred(hi). On return
/// pred(result.lo) holds, pred(result.hi) does not, and
/// result.hi - result.lo <= tolerance.
struct Bracket {
  double lo;
  double hi;
  int iterations;
};

template <typename Predicate>
Bracket bisect_boundary(Predicate&& pred, double lo, double hi,
                        double tolerance, int max_iterations = 200) {
  int it = 0;
  while (hi - lo > tolerance) {
    if (++it > max_iterations) {
      throw NumericalFailure("bisection did not reach tolerance " +
                             std::to_string(tolerance) + " in " +
                             std::to_string(max_iterations) + " iterations");
    }
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;  // interval at floating-point resolution
    if (pred(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi, it};
}

/// Largest rate R with outage(R) <= epsilon, for an outage function that is
/// nondecreasing in R. Returns 0 when outage(0) > epsilon. The bracket is
/// doubled from 1 bit up to \p max_rate and then bisected to \p tolerance.
template <typename Outage>
double largest_feasible_rate(Outage&& outage, double epsilon,
                             double tolerance = 1e-6, double max_rate = 1024.0) {
  auto feasible = [&](double rate) { return outage(rate) <= epsilon; };
  if (!feasible(0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (feasible(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > max_rate) {
      throw NumericalFailure("outage stays below epsilon up to " +
                             std::to_string(max_rate) + " bits");
    }
  }
  return bisect_boundary(feasible, lo, hi, tolerance).lo;
}

}  // namespace wiretap
