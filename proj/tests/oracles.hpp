#pragma once

// Independent reference computations used by the unit and acceptance tests.
// None of these share code with the library's evaluators.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

/// sup_k |z_k| e^{t Re z_k} by enumerating k = 1..k_max.
inline double lattice_norm(const std::function<double(double)>& g, double t, double k_max) {
  double best = 0.0;
  for (double k = 1.0; k <= k_max; k += 1.0) {
    const double gk = g(k);
    best = std::max(best, std::hypot(gk, k) * std::exp(-t * gk));
  }
  return best;
}

/// sup over the continuum s >= 1 of |z(s)| e^{-t g(s)} by golden-section on a
/// unimodal objective bracketed by a coarse log scan.
inline double continuum_norm(const std::function<double(double)>& g, double t, double s_max) {
  auto h = [&](double u) {
    const double s = std::exp(u);
    const double gs = g(s);
    return std::log(std::hypot(gs, s)) - t * gs;
  };
  const double umax = std::log(s_max);
  int best_i = 0;
  double best = -std::numeric_limits<double>::infinity();
  const int n = 4000;
  for (int i = 0; i <= n; ++i) {
    const double v = h(umax * i / n);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  double a = umax * std::max(0, best_i - 1) / n, b = umax * std::min(n, best_i + 1) / n;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 200; ++it) {
    const double c = b - phi * (b - a), d = a + phi * (b - a);
    if (h(c) > h(d)) {
      b = d;
    } else {
      a = c;
    }
  }
  return std::exp(std::max(best, h(0.5 * (a + b))));
}

/// inf over a dense eta scan in [s, s + width] of the distance from i*eta to
/// the explicit points (both signs of eta).
inline double envelope_eta_scan(const std::vector<Complex>& pts, double s, double width, int n) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double eta = s + width * i / n;
    for (const auto& z : pts) {
      best = std::min(best, std::abs(Complex(0.0, eta) - z));
      best = std::min(best, std::abs(Complex(0.0, -eta) - z));
    }
  }
  return best;
}

/// Brute-force nearest distance.
inline double distance(const std::vector<Complex>& pts, Complex lambda) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& z : pts) best = std::min(best, std::abs(lambda - z));
  return best;
}

/// min over a dense log-uniform lambda grid in (1, lambda_max] of f(lambda s)/log(lambda).
inline double m_inf_dense(const std::function<double(double)>& f, double s, double lambda_max, int n) {
  double best = std::numeric_limits<double>::infinity();
  const double umax = std::log(lambda_max);
  for (int i = 1; i <= n; ++i) {
    const double u = umax * std::pow(10.0, -8.0 * (1.0 - static_cast<double>(i) / n));
    best = std::min(best, f(s * std::exp(u)) / u);
  }
  return best;
}

/// inf{ s in [lo, hi] : f(s) >= t } by bisection on a continuous non-decreasing f.
inline double left_inverse_bisect(const std::function<double(double)>& f, double t, double lo, double hi) {
  if (f(lo) >= t) return lo;
  for (int it = 0; it < 300 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = std::sqrt(lo * hi) > lo && std::sqrt(lo * hi) < hi ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (f(mid) >= t) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

/// inf over a (lambda, s) grid of f(lambda s) / (f(s) lambda^alpha).
inline double increase_scan(const std::function<double(double)>& f, double alpha, double s0, double end, int n) {
  double best = std::numeric_limits<double>::infinity();
  const double span = std::log(end / s0);
  for (int i = 0; i <= n; ++i) {
    const double s = s0 * std::exp(span * i / n);
    for (int j = 0; i + j <= n; ++j) {
      const double lambda = std::exp(span * j / n);
      best = std::min(best, f(std::min(end, lambda * s)) / (f(s) * std::pow(lambda, alpha)));
    }
  }
  return best;
}

}  // namespace oracle
