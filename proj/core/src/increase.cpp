#include "semigrowth/increase.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "semigrowth/asymp.hpp"
#include "semigrowth/errors.hpp"
#include "semigrowth/grid.hpp"
#include "semigrowth/parallel.hpp"

namespace semigrowth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

// Abscissae in [s0, end] at which the increase ratio is sampled. For log-log
// interpolation log f - alpha log s is piecewise linear in log s, so the knots
// already attain the infimum; the extra points only matter in linear mode.
std::vector<double> sample_points(const MonotoneFn& f, double s0, const CertificateOptions& opt) {
  std::vector<double> pts{s0};
  for (double s : f.grid()) {
    if (s > s0) pts.push_back(s);
  }
  const double end = f.domain_end();
  if (end > s0) {
    const double span = std::log(end / s0);
    if (opt.s_samples > 1) {
      for (int i = 1; i < opt.s_samples; ++i) {
        pts.push_back(s0 * std::exp(span * i / (opt.s_samples - 1)));
      }
    }
    if (f.mode() == Interp::linear && opt.lambda_samples > 0) {
      const auto extra = log_grid(s0, end, opt.lambda_samples);
      pts.insert(pts.end(), extra.begin(), extra.end());
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  while (!pts.empty() && pts.back() > end) pts.pop_back();
  return pts;
}

std::vector<double> separable_profile(const MonotoneFn& f, const std::vector<double>& pts, double alpha) {
  std::vector<double> g(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) g[i] = std::log(f(pts[i])) - alpha * std::log(pts[i]);
  return g;
}

// min over pairs x <= y with y - x <= window of g(y) - g(x).
double min_forward_difference(const std::vector<double>& u, const std::vector<double>& g, double window) {
  double best = 0.0;
  if (!std::isfinite(window)) {
    double running = -kInf;
    for (double v : g) {
      running = std::max(running, v);
      best = std::min(best, v - running);
    }
    return best;
  }
  std::deque<std::size_t> q;  // indices with decreasing g
  std::size_t left = 0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    while (!q.empty() && g[q.back()] <= g[j]) q.pop_back();
    q.push_back(j);
    while (u[j] - u[left] > window) ++left;
    while (q.front() < left) q.pop_front();
    best = std::min(best, g[j] - g[q.front()]);
  }
  return best;
}

// Suffix start index on which v is non-decreasing up to `tol`.
std::size_t nondecreasing_suffix(const std::vector<double>& v, double tol) {
  std::size_t m = v.size() - 1;
  while (m > 0 && v[m - 1] <= v[m] + tol) --m;
  return m;
}

// Smallest point from which h <= 0 (up to rounding) on all knots, refining the
// crossing inside its segment by bisection. nullopt if h > 0 at the last knot.
template <class H>
std::optional<double> crossing_from(const MonotoneFn& f, std::size_t first, H&& h) {
  constexpr double tol = 1e-12;
  const auto s = f.grid();
  std::size_t j = s.size();
  while (j > first && h(s[j - 1]) <= tol) --j;
  if (j == s.size()) return std::nullopt;
  if (j == first) return s[first];
  double lo = s[j - 1], hi = s[j];
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (h(mid) <= tol) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

bool m_log_strictly_increasing_from(const MonotoneFn& f, double s1) {
  std::vector<double> pts{s1};
  for (double s : f.grid()) {
    if (s > s1) pts.push_back(s);
  }
  double prev = -kInf;
  for (double s : pts) {
    const double v = f(s);
    if (!(v < s)) return false;
    const double m = v / std::log(s / v);
    if (!(m > prev)) return false;
    prev = m;
  }
  return true;
}

}  // namespace

std::vector<double> default_alpha_grid() {
  std::vector<double> out;
  for (int i = 100; i >= 1; --i) out.push_back(i / 100.0);
  return out;
}

double increase_constant(const MonotoneFn& f, double alpha, double s0, const CertificateOptions& opt,
                         double max_span) {
  if (!f.contains(s0)) throw DomainError("increase_constant: s0 = " + fmt(s0) + " outside the domain");
  s0 = std::clamp(s0, f.domain_start(), f.domain_end());
  const auto pts = sample_points(f, s0, opt);
  std::vector<double> u(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) u[i] = std::log(pts[i]);
  const auto g = separable_profile(f, pts, alpha);
  return std::exp(min_forward_difference(u, g, std::log(max_span)));
}

double limit_elasticity(const MonotoneFn& f, double s0) {
  const double end = f.domain_end();
  const auto decades = static_cast<int>(std::floor(decades_spanned(s0, end) + 1e-9));
  std::vector<double> x, y;
  double last = 0.0;
  for (int j = 0; j < decades; ++j) {
    const double a = s0 * std::pow(10.0, j);
    const double b = std::min(end, a * 10.0);
    const double e = std::log(f(b) / f(a)) / std::log(b / a);
    last = e;
    const double mid = std::log(std::sqrt(a * b));
    if (mid > 1.0) {
      x.push_back(1.0 / mid);
      y.push_back(e);
    }
  }
  if (x.size() < 2) return last;
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (!(sxx > 0.0)) return my;
  return my - (sxy / sxx) * mx;
}

std::optional<PositiveIncreaseCert> find_certificate(const MonotoneFn& f, const CertificateOptions& opt) {
  const double start = f.domain_start();
  const double end = f.domain_end();
  if (!(start > 0.0) || decades_spanned(start, end) < 3.0 - 1e-9) {
    throw ConfigError("find_certificate: function must span at least three decades");
  }
  std::vector<double> candidates;
  for (int j = 0; decades_spanned(start * std::pow(10.0, j), end) >= 3.0 - 1e-9; ++j) {
    candidates.push_back(start * std::pow(10.0, j));
  }
  std::vector<double> elasticity(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) elasticity[i] = limit_elasticity(f, candidates[i]);

  auto alphas = opt.alpha_grid;
  std::sort(alphas.begin(), alphas.end(), std::greater<>());
  for (double alpha : alphas) {
    if (!(alpha > 0.0)) continue;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const double s0 = candidates[i];
      if (alpha > elasticity[i] + 1e-6) continue;
      const double c = increase_constant(f, alpha, s0, opt);
      if (!(c > opt.c_floor)) continue;
      const double span = std::floor(decades_spanned(s0, end) + 1e-9);
      const double c_short = increase_constant(f, alpha, s0, opt, std::pow(10.0, span - 1.0));
      if (c < (1.0 - opt.drift_tolerance) * c_short) continue;
      return PositiveIncreaseCert{alpha, std::min(c, 1.0), s0};
    }
  }
  return std::nullopt;
}

CertificateCheck verify_certificate(const MonotoneFn& f, const PositiveIncreaseCert& cert,
                                    std::size_t probes, std::uint64_t seed) {
  const double end = f.domain_end();
  if (!f.contains(cert.s0) || !(cert.s0 < end)) {
    throw PreconditionError("verify_certificate: s0 = " + fmt(cert.s0) + " not inside the domain");
  }
  const double s0 = std::max(cert.s0, f.domain_start());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double span = std::log(end / s0);

  CertificateCheck out;
  out.worst_ratio = kInf;
  for (std::size_t i = 0; i < probes; ++i) {
    const double lambda = std::exp(span * unit(rng));
    const double s_hi = std::max(s0, end / lambda);
    const double s = std::min(s_hi, s0 * std::exp(std::log(s_hi / s0) * unit(rng)));
    const double ls = std::min(end, lambda * s);
    const double ratio = f(ls) / (f(s) * std::pow(lambda, cert.alpha));
    if (ratio < out.worst_ratio) {
      out.worst_ratio = ratio;
      out.worst_s = s;
      out.worst_lambda = lambda;
    }
  }
  out.probes = probes;
  out.pass = probes > 0 && out.worst_ratio >= cert.c0 * (1.0 - 1e-9);
  return out;
}

double polynomial_floor_check(const MonotoneFn& f, const PositiveIncreaseCert& cert) {
  if (!f.contains(cert.s0)) throw PreconditionError("polynomial_floor_check: s0 outside the domain");
  const double s0 = std::max(cert.s0, f.domain_start());
  double c1 = f(s0) / std::pow(s0, cert.alpha);
  for (double s : f.grid()) {
    if (s > s0) c1 = std::min(c1, f(s) / std::pow(s, cert.alpha));
  }
  return c1;
}

IntegralCheck integral_estimate_check(const MonotoneFn& f, const PositiveIncreaseCert& cert, double gamma) {
  const double ag = cert.alpha * gamma;
  if (!(ag > 2.0)) {
    throw PreconditionError("integral_estimate_check: gamma = " + fmt(gamma) + " must exceed 2/alpha = " +
                            fmt(2.0 / cert.alpha));
  }
  if (!f.contains(cert.s0) || !(cert.s0 < f.domain_end())) {
    throw PreconditionError("integral_estimate_check: s0 outside the domain");
  }
  const double s0 = std::max(cert.s0, f.domain_start());
  const double end = f.domain_end();

  std::vector<double> pts{s0};
  for (double s : f.grid()) {
    if (s > s0) pts.push_back(s);
  }

  IntegralCheck out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i], b = pts[i + 1];
    const double fa = f(a), fb = f(b);
    if (f.mode() == Interp::log_log) {
      // f = fa (s/a)^p on the segment, so the integrand is a power of s.
      const double L = std::log(b / a);
      const double p = std::log(fb / fa) / L;
      const double e = 2.0 - gamma * p;
      const double base = a * a * std::pow(fa, -gamma);
      out.integral += base * (std::abs(e * L) < 1e-12 ? L : std::expm1(e * L) / e);
    } else {
      auto integrand = [&](double s) { return s / std::pow(f(s), gamma); };
      out.integral += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, a, b, 15, 1e-13);
    }
  }
  const double cg = std::pow(cert.c0, gamma);
  const double tail_end = end * end / ((ag - 2.0) * cg * std::pow(f(end), gamma));
  const double tail_s0 = std::pow(s0, ag) * std::pow(end, 2.0 - ag) / ((ag - 2.0) * cg * std::pow(f(s0), gamma));
  out.tail_bound = std::min(tail_end, tail_s0);
  out.lhs = out.integral + out.tail_bound;
  out.rhs = s0 * s0 / ((ag - 2.0) * cg * std::pow(f(s0), gamma));
  out.pass = out.lhs <= out.rhs * (1.0 + 1e-9);
  return out;
}

ConditionReport check_c_conditions(const MonotoneFn& f, const CertificateOptions& opt) {
  ConditionReport rep;

  rep.c1.certificate = find_certificate(f, opt);
  rep.c1.pass = rep.c1.certificate.has_value();

  const auto s = f.grid();
  const auto v = f.values();
  std::size_t start = s.size();
  while (start > 0 && v[start - 1] < s[start - 1]) --start;
  if (start < s.size()) {
    rep.c2.s_tilde = s[start];
    std::vector<double> x(s.begin() + static_cast<std::ptrdiff_t>(start), s.end());
    std::vector<double> ratio;
    for (std::size_t i = start; i < s.size(); ++i) ratio.push_back(v[i] / s[i]);
    if (x.size() >= 2 && decades_spanned(x.front(), x.back()) >= 2.0 - 1e-9) {
      rep.c2.decade_sups = decade_sups(x, ratio);
      rep.c2.pass = rep.c2.decade_sups.size() >= 2;
      for (std::size_t k = 1; k < rep.c2.decade_sups.size(); ++k) {
        if (!(rep.c2.decade_sups[k] < rep.c2.decade_sups[k - 1])) rep.c2.pass = false;
      }
    }
  }

  try {
    const auto ml = m_log_transform(f);
    rep.c3.s1 = ml.monotone_from;
    rep.c3.last_decreasing_pair = ml.last_decreasing_pair;
    rep.c3.pass = decades_spanned(ml.monotone_from, f.domain_end()) >= 2.0 - 1e-9;
  } catch (const DomainError&) {
    rep.c3.pass = false;
  }
  return rep;
}

Prop33Result prop33_check(const MonotoneFn& f, Prop33Variant variant) {
  const auto s = f.grid();
  const auto v = f.values();
  const double end = f.domain_end();
  if (decades_spanned(f.domain_start(), end) < 3.0 - 1e-9) {
    throw ConfigError("prop33_check: function must span at least three decades");
  }
  Prop33Result out;
  out.variant = variant;

  if (variant == Prop33Variant::ii) {
    for (double alpha : default_alpha_grid()) {
      std::vector<double> g(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) g[i] = std::log(v[i]) - alpha * std::log(s[i]);
      const double grow_from = s[nondecreasing_suffix(g, 1e-12)];
      const auto below = crossing_from(f, 0, [&](double x) { return std::log(f(x) / x) + 1.0 / alpha; });
      if (!below) continue;
      const double s1 = std::max(grow_from, *below);
      if (decades_spanned(s1, end) < 2.0 - 1e-9) continue;
      out.alpha = alpha;
      out.s1 = s1;
      out.m_log_increasing = m_log_strictly_increasing_from(f, s1);
      out.pass = out.m_log_increasing;
      if (!out.pass) out.note = "conditions hold but the transform is not strictly increasing beyond s1";
      return out;
    }
    out.note = "no alpha with f(lambda s)/f(s) >= lambda^alpha and f(s) <= exp(-1/alpha) s on two decades";
    return out;
  }

  // Variant (i): gamma on a coarse grid, delta at its smallest admissible value.
  std::size_t first = 0;
  while (first < s.size() && !(s[first] > 1.0)) ++first;
  if (s.size() - first < 2) {
    out.note = "domain does not extend beyond s = 1";
    return out;
  }
  std::optional<Prop33Result> best;
  for (int k = 1; k <= 19; ++k) {
    const double gamma = 0.05 * k;
    const double delta = gamma / (1.0 - gamma);
    std::vector<double> h(s.size() - first);
    for (std::size_t i = first; i < s.size(); ++i) {
      h[i - first] = std::log(v[i]) - (1.0 + delta) * std::log(std::log(s[i]));
    }
    const double grow_from = s[first + nondecreasing_suffix(h, 1e-12)];
    const auto below = crossing_from(f, first, [&](double x) { return std::log(f(x)) - gamma * std::log(x); });
    if (!below) continue;
    const double s1 = std::max(grow_from, *below);
    if (decades_spanned(s1, end) < 2.0 - 1e-9) continue;
    if (!best || s1 < best->s1) {
      Prop33Result r;
      r.variant = variant;
      r.gamma = gamma;
      r.delta = delta;
      r.s1 = s1;
      best = r;
    }
  }
  if (!best) {
    out.note = "no gamma with f(s) <= s^gamma and the log-ratio bound on two decades";
    return out;
  }
  out = *best;
  out.m_log_increasing = m_log_strictly_increasing_from(f, out.s1);
  out.pass = out.m_log_increasing;
  if (!out.pass) out.note = "conditions hold but the transform is not strictly increasing beyond s1";
  return out;
}

NecessityResult necessity_sandwich_check(const SpectralModel& model, const MonotoneFn& f, double delta,
                                         double epsilon, std::optional<bool> growth_bound_holds,
                                         const CertificateOptions& opt) {
  if (!(delta > 0.0 && delta <= 1.0)) throw PreconditionError("necessity: delta must lie in (0, 1]");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionError("necessity: epsilon must lie in (0, 1)");

  std::vector<double> probes;
  for (double s : f.grid()) {
    if (s > model.imag_bound()) probes.push_back(s);
  }
  if (probes.empty()) throw PreconditionError("necessity: no knot of f beyond the imag bound");

  std::vector<double> env(probes.size());
  parallel_for(probes.size(), [&](std::size_t i) { env[i] = envelope_at(model, probes[i]).value; });

  NecessityResult out;
  constexpr double tol = 1e-9;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const double s = probes[i], m = f(s), n = env[i];
    const bool lower = delta * n <= m * (1.0 + tol);
    const bool upper = m <= n * (1.0 + tol);
    const bool linear = m <= delta * epsilon * s * (1.0 + tol);
    if (!(lower && upper && linear)) {
      out.verdict = Verdict::fail;
      out.violating_s = s;
      out.note = !upper ? "f exceeds the spectral envelope"
                 : !lower ? "f below delta times the spectral envelope"
                          : "f exceeds delta*epsilon*s";
      return out;
    }
  }
  out.chains_hold = true;
  if (growth_bound_holds.has_value() && !*growth_bound_holds) {
    out.verdict = Verdict::inconclusive;
    out.note = "growth bound not confirmed on the window; conclusion not applicable";
    return out;
  }
  out.certificate = find_certificate(f, opt);
  if (out.certificate) {
    out.verdict = Verdict::pass;
    out.note = "positive increase confirmed";
  } else {
    out.verdict = Verdict::inconclusive;
    out.note = "hypothesis of growth bound must fail";
  }
  return out;
}

}  // namespace semigrowth
