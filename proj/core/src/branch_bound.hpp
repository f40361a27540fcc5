#pragma once

// Certified maximization of a function over the integers in [lo, hi] given an
// interval upper bound. Used for lattice spectra with up to ~1e15 indices.

#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace semigrowth::detail {

struct IntMax {
  double value = -std::numeric_limits<double>::infinity();
  double argmax = 0.0;
  bool certified = true;   ///< false when the node budget ran out
  double upper = -std::numeric_limits<double>::infinity();  ///< certified upper bound on the max
};

struct IntMaxOptions {
  /// Stop once no open interval can beat the incumbent by more than this
  /// absolute margin.
  double abs_tol = 0.0;
  /// Stop early once the incumbent reaches this level.
  double target = std::numeric_limits<double>::infinity();
  double leaf_width = 64.0;
  std::size_t node_budget = 20'000'000;
};

/// `eval(k)` is the objective at integer k; `upper(a, b)` bounds it from above
/// on the integers of [a, b].
template <class Eval, class Upper>
IntMax maximize_over_integers(double lo, double hi, Eval&& eval, Upper&& upper,
                              const IntMaxOptions& opt = {}) {
  IntMax best;
  lo = std::ceil(lo);
  hi = std::floor(hi);
  if (hi < lo) return best;

  auto consider = [&](double k) {
    const double v = eval(k);
    if (v > best.value) {
      best.value = v;
      best.argmax = k;
    }
  };
  consider(lo);
  if (hi > lo) consider(hi);

  struct Node {
    double a, b, ub;
    bool operator<(const Node& o) const { return ub < o.ub; }
  };
  std::priority_queue<Node> open;
  open.push({lo, hi, upper(lo, hi)});

  std::size_t nodes = 0;
  while (!open.empty()) {
    const Node n = open.top();
    if (n.ub <= best.value + opt.abs_tol || best.value >= opt.target) break;
    open.pop();
    if (++nodes > opt.node_budget) {
      best.certified = false;
      open.push(n);
      break;
    }
    if (n.b - n.a <= opt.leaf_width) {
      for (double k = n.a; k <= n.b; k += 1.0) consider(k);
      continue;
    }
    const double mid = std::floor(0.5 * (n.a + n.b));
    consider(mid);
    open.push({n.a, mid, upper(n.a, mid)});
    open.push({mid + 1.0, n.b, upper(mid + 1.0, n.b)});
  }
  best.upper = open.empty() ? best.value : std::max(best.value, open.top().ub);
  return best;
}

}  // namespace semigrowth::detail
