#include "semigrowth/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "semigrowth/errors.hpp"
#include "semigrowth/grid.hpp"
#include "semigrowth/parallel.hpp"

namespace semigrowth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

void validate_t_grid(std::span<const double> t) {
  if (t.size() < 2) throw ConfigError("growth curve: need at least two t values");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0) || !std::isfinite(t[i])) throw ConfigError("growth curve: t values must be positive");
    if (i > 0 && !(t[i] < t[i - 1])) throw ConfigError("growth curve: t grid must be strictly decreasing");
  }
}

// Level strictly above the minimum and not above the maximum, so the
// generalized inverse is informative.
bool in_range(const MonotoneFn& f, double level) { return level > f.min_value() && level <= f.max_value(); }

// Abscissae in the asymptotic direction: 1/t for t-series, |eta| for eta-series.
std::vector<double> asymptotic_axis(const BoundReport& r) {
  std::vector<double> x;
  x.reserve(r.ratio_series.size());
  for (const auto& row : r.ratio_series) x.push_back(r.x_label == "t" ? 1.0 / row.x : std::abs(row.x));
  return x;
}

// Operational big-O verdict on the ratio column.
void big_o_verdict(BoundReport& r, const AsympPolicy& policy) {
  if (r.ratio_series.size() < 2) {
    r.verdict = Verdict::inconclusive;
    r.notes.push_back("window empty: envelope undefined on the requested grid");
    return;
  }
  const auto x = asymptotic_axis(r);
  std::vector<double> ratio;
  for (const auto& row : r.ratio_series) ratio.push_back(row.ratio);
  r.window_lo = std::min(r.ratio_series.front().x, r.ratio_series.back().x);
  r.window_hi = std::max(r.ratio_series.front().x, r.ratio_series.back().x);
  r.fitted_C = *std::max_element(ratio.begin(), ratio.end());
  r.decade_sups = decade_sups(x, ratio);
  if (decades_spanned(x.front(), x.back()) < policy.min_decades - 1e-9) {
    r.verdict = Verdict::inconclusive;
    r.notes.push_back("window spans " + fmt(decades_spanned(x.front(), x.back())) + " decades, fewer than " +
                      fmt(policy.min_decades));
    return;
  }
  r.verdict = bounded_nonincreasing(r.decade_sups, policy.slack) ? Verdict::pass : Verdict::fail;
}

std::string big_o_rule(const AsympPolicy& policy) {
  return "big-O read as: decade-wise sup of the ratio non-increasing within " + fmt(100.0 * policy.slack) +
         "% slack over >= " + fmt(policy.min_decades) + " decades";
}

// tau = O(K(tau)) on the knots of K.
bool linear_lower_growth(const MonotoneFn& K, const AsympPolicy& policy) {
  const auto tau = K.grid();
  const auto v = K.values();
  if (decades_spanned(tau.front(), tau.back()) < policy.min_decades - 1e-9) return false;
  std::vector<double> ratio(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) ratio[i] = tau[i] / v[i];
  return bounded_nonincreasing(decade_sups(tau, ratio), policy.slack);
}

// Picks the largest passing c, else the candidate with the smallest fitted C.
BoundReport pick_best(std::vector<BoundReport> candidates) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].verdict == Verdict::pass && (!best || *candidates[i].fitted_c > *candidates[*best].fitted_c)) {
      best = i;
    }
  }
  if (!best) {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (candidates[i].verdict != Verdict::fail) continue;
      if (!best || candidates[i].fitted_C < candidates[*best].fitted_C) best = i;
    }
  }
  if (!best) best = 0;
  return std::move(candidates[*best]);
}

std::vector<double> sorted_c_grid(std::span<const double> c_grid) {
  std::vector<double> c(c_grid.begin(), c_grid.end());
  if (c.empty()) throw ConfigError("c grid is empty");
  for (double v : c) {
    if (!(v > 0.0)) throw ConfigError("c grid values must be positive");
  }
  std::sort(c.begin(), c.end());
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// Curves

GrowthCurve growth_curve(const SpectralModel& model, std::span<const double> t_grid, std::string model_ref) {
  validate_t_grid(t_grid);
  GrowthCurve c;
  c.t.assign(t_grid.begin(), t_grid.end());
  c.values.resize(c.t.size());
  c.truncation.resize(c.t.size());
  std::vector<char> cert(c.t.size(), 1);
  parallel_for(c.t.size(), [&](std::size_t i) {
    const auto r = semigroup_derivative_norm_detail(model, c.t[i]);
    c.values[i] = r.value;
    c.truncation[i] = r.truncation_bound;
    cert[i] = r.certified ? 1 : 0;
  });
  for (std::size_t i = 0; i < c.t.size(); ++i) {
    if (!(c.values[i] > 0.0)) throw ModelError("growth curve: ||AT(t)|| vanishes at t = " + fmt(c.t[i]));
    c.certified = c.certified && cert[i];
  }
  c.model_ref = std::move(model_ref);
  return c;
}

GrowthCurve make_curve(std::vector<double> t, std::vector<double> values, std::string model_ref) {
  validate_t_grid(t);
  if (values.size() != t.size()) throw ConfigError("growth curve: size mismatch");
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("growth curve: values must be positive and finite");
  }
  GrowthCurve c;
  c.truncation.assign(t.size(), 0.0);
  c.t = std::move(t);
  c.values = std::move(values);
  c.model_ref = std::move(model_ref);
  return c;
}

MonotoneFn k_function(const GrowthCurve& curve) {
  std::vector<double> tau, k;
  double running = 0.0;
  for (std::size_t i = 0; i < curve.t.size(); ++i) {
    if (curve.t[i] > 1.0) continue;
    running = std::max(running, curve.values[i]);
    tau.push_back(1.0 / curve.t[i]);
    k.push_back(running);
  }
  if (tau.size() < 2) throw DomainError("k_function: curve needs at least two samples with t <= 1");
  return MonotoneFn(std::move(tau), std::move(k), Interp::log_log);
}

KEpsilon k_epsilon(const GrowthCurve& curve, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionError("k_epsilon: epsilon must lie in (0, 1)");
  std::vector<double> tau, v;
  for (std::size_t i = 0; i < curve.t.size(); ++i) {
    tau.push_back(1.0 / curve.t[i]);
    v.push_back(curve.values[i] / (1.0 - epsilon));
  }
  std::size_t m = v.size() - 1;
  while (m > 0 && v[m - 1] <= v[m]) --m;
  KEpsilon out;
  if (v.size() - m < 2) {
    out.inconclusive = true;
    return out;
  }
  out.tail_start = tau[m];
  out.function = MonotoneFn({tau.begin() + static_cast<std::ptrdiff_t>(m), tau.end()},
                            {v.begin() + static_cast<std::ptrdiff_t>(m), v.end()}, Interp::log_log);
  return out;
}

// ---------------------------------------------------------------------------
// Check ids

namespace {
constexpr std::array<std::pair<CheckId, std::string_view>, 9> kCheckNames{{
    {CheckId::banach_upper, "banach_upper"},
    {CheckId::hilbert_upper, "hilbert_upper"},
    {CheckId::lower_41b, "lower_41b"},
    {CheckId::resolvent_41a, "resolvent_41a"},
    {CheckId::sandwich_62, "sandwich_62"},
    {CheckId::yosida_log, "yosida_log"},
    {CheckId::classical_cp, "classical_cp"},
    {CheckId::classical_eberhardt, "classical_eberhardt"},
    {CheckId::holomorphic_classify, "holomorphic_classify"},
}};
}  // namespace

std::string_view to_string(CheckId id) {
  for (const auto& [k, name] : kCheckNames) {
    if (k == id) return name;
  }
  return "unknown";
}

std::optional<CheckId> parse_check_id(std::string_view name) {
  for (const auto& [k, n] : kCheckNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

const std::vector<CheckId>& all_check_ids() {
  static const std::vector<CheckId> ids = [] {
    std::vector<CheckId> v;
    for (const auto& entry : kCheckNames) v.push_back(entry.first);
    return v;
  }();
  return ids;
}

std::vector<double> default_c_grid() {
  std::vector<double> c;
  for (int i = 1; i <= 9; ++i) c.push_back(i / 10.0);
  return c;
}

// ---------------------------------------------------------------------------
// Upper bounds

BoundReport check_banach_upper(const GrowthCurve& curve, const MonotoneFn& M, std::span<const double> c_grid,
                               const AsympPolicy& policy) {
  const auto cond = check_c_conditions(M);
  if (!cond.pass()) {
    std::string why;
    if (!cond.c1.pass) why += " no positive-increase certificate;";
    if (!cond.c2.pass) why += " M(s) = o(s) not confirmed;";
    if (!cond.c3.pass) why += " M/log(s/M) not eventually non-decreasing;";
    throw HypothesisError("banach_upper: hypotheses unmet:" + why);
  }
  const MonotoneFn ml = m_log_transform(M).function;

  std::vector<BoundReport> candidates;
  for (double c : sorted_c_grid(c_grid)) {
    BoundReport r;
    r.id = CheckId::banach_upper;
    r.fitted_c = c;
    for (std::size_t i = 0; i < curve.t.size(); ++i) {
      const double level = 1.0 / (c * curve.t[i]);
      if (!in_range(ml, level)) continue;
      const double env = left_inverse(ml, level);
      r.ratio_series.push_back({curve.t[i], curve.values[i], env, curve.values[i] / env});
    }
    big_o_verdict(r, policy);
    candidates.push_back(std::move(r));
  }
  auto best = pick_best(std::move(candidates));
  best.notes.push_back("envelope: left inverse of M/log(s/M) at 1/(c t), restricted to its non-decreasing tail from s = " +
                       fmt(ml.domain_start()));
  best.notes.push_back("certificate alpha = " + fmt(cond.c1.certificate->alpha));
  best.notes.push_back(big_o_rule(policy));
  return best;
}

BoundReport inverse_growth_bound(const GrowthCurve& curve, const MonotoneFn& M, double c, const AsympPolicy& policy) {
  BoundReport r;
  r.id = CheckId::hilbert_upper;
  r.fitted_c = c;
  for (std::size_t i = 0; i < curve.t.size(); ++i) {
    const double level = 1.0 / (c * curve.t[i]);
    if (!in_range(M, level)) continue;
    const double env = left_inverse(M, level);
    r.ratio_series.push_back({curve.t[i], curve.values[i], env, curve.values[i] / env});
  }
  big_o_verdict(r, policy);
  return r;
}

BoundReport check_hilbert_upper(const GrowthCurve& curve, const MonotoneFn& M, const AsympPolicy& policy) {
  const auto cert = find_certificate(M);
  if (!cert) throw HypothesisError("hilbert_upper: M has no positive-increase certificate");
  auto r = inverse_growth_bound(curve, M, 1.0, policy);
  r.fitted_c.reset();
  r.notes.push_back("envelope: left inverse of M at 1/t");
  r.notes.push_back("certificate alpha = " + fmt(cert->alpha) + ", c0 = " + fmt(cert->c0) + ", s0 = " + fmt(cert->s0));
  r.notes.push_back(big_o_rule(policy));
  return r;
}

// ---------------------------------------------------------------------------
// Lower bounds

BoundReport check_lower_41b(const GrowthCurve& curve, const MonotoneFn& M, double c, const AsympPolicy& policy) {
  if (!(c > 0.0)) throw ConfigError("lower_41b: c must be positive");
  const MonotoneFn K = k_function(curve);
  if (!linear_lower_growth(K, policy)) {
    throw HypothesisError("lower_41b: tau = O(K(tau)) not confirmed on the curve");
  }
  BoundReport r;
  r.id = CheckId::lower_41b;
  r.fitted_c = c;
  for (std::size_t i = 0; i < curve.t.size(); ++i) {
    const double t = curve.t[i];
    if (t > 1.0) continue;
    const double level = 1.0 / (c * t);
    if (!in_range(M, level)) continue;
    const double lhs = left_inverse(M, level);
    const double env = K(1.0 / t);
    r.ratio_series.push_back({t, lhs, env, lhs / env});
  }
  big_o_verdict(r, policy);
  r.notes.push_back("ratio: left inverse of M at 1/(c t) over K(1/t)");
  r.notes.push_back(big_o_rule(policy));
  return r;
}

BoundReport check_resolvent_41a(const SpectralModel& model, const MonotoneFn& K, std::span<const double> c_grid,
                                std::span<const double> eta_grid, const AsympPolicy& policy) {
  std::vector<double> eta(eta_grid.begin(), eta_grid.end());
  std::sort(eta.begin(), eta.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  std::vector<double> res(eta.size());
  parallel_for(eta.size(), [&](std::size_t i) { res[i] = resolvent_norm_on_axis(model, eta[i]); });

  const bool hypothesis = linear_lower_growth(K, policy);
  std::vector<BoundReport> candidates;
  for (double c : sorted_c_grid(c_grid)) {
    BoundReport r;
    r.id = CheckId::resolvent_41a;
    r.x_label = "eta";
    r.fitted_c = c;
    std::size_t clipped = 0;
    for (std::size_t i = 0; i < eta.size(); ++i) {
      const double level = c * std::abs(eta[i]);
      if (!in_range(K, level)) {
        ++clipped;
        continue;
      }
      const double kinv = left_inverse(K, level);
      r.ratio_series.push_back({eta[i], res[i], 1.0 / kinv, res[i] * kinv});
    }
    big_o_verdict(r, policy);
    if (clipped > 0) {
      r.notes.push_back("window clipped: " + std::to_string(clipped) + " eta values outside the range of K");
    }
    candidates.push_back(std::move(r));
  }
  auto best = pick_best(std::move(candidates));
  if (!hypothesis) {
    best.verdict = Verdict::fail;
    best.notes.push_back("hypothesis tau = O(K(tau)) not confirmed on the knots of K");
  }
  best.notes.push_back("ratio: ||R(i eta)|| times the left inverse of K at c|eta|");
  best.notes.push_back(big_o_rule(policy));
  return best;
}

// ---------------------------------------------------------------------------
// Sandwich

BoundReport check_sandwich_62(const GrowthCurve& curve, const MonotoneFn& M, double epsilon, const MInfOptions& opt) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionError("sandwich_62: epsilon must lie in (0, 1)");
  {
    const auto s = M.grid();
    const auto v = M.values();
    std::vector<double> x(s.begin(), s.end()), fv(v.begin(), v.end());
    if (decades_spanned(x.front(), x.back()) < 2.0 - 1e-9) {
      throw HypothesisError("sandwich_62: M spans fewer than two decades");
    }
    const auto rep = asymp_compare_series(x, fv, x);
    if (rep.relation != Relation::little_o) throw HypothesisError("sandwich_62: M(s) = o(s) not confirmed");
    if (!(M.max_value() >= 2.0 * M.min_value())) {
      throw HypothesisError("sandwich_62: M does not diverge on its grid");
    }
  }
  const MonotoneFn minf = m_inf_transform(M, opt);

  BoundReport r;
  r.id = CheckId::sandwich_62;
  for (std::size_t i = 0; i < curve.t.size(); ++i) {
    const double level = 1.0 / curve.t[i];
    if (!in_range(minf, level)) continue;
    const double env = left_inverse(minf, level);
    r.ratio_series.push_back({curve.t[i], curve.values[i], env, curve.values[i] / env});
  }
  r.notes.push_back("M_inf evaluated on " + std::to_string(minf.size()) + " knots up to s = " +
                    fmt(minf.domain_end()));
  if (r.ratio_series.size() < 2) {
    r.verdict = Verdict::inconclusive;
    r.notes.push_back("window empty: M_inf range does not cover 1/t on the grid");
    return r;
  }
  const auto x = asymptotic_axis(r);
  std::vector<double> ratio;
  for (const auto& row : r.ratio_series) ratio.push_back(row.ratio);
  r.decade_sups = decade_sups(x, ratio);
  r.fitted_C = *std::max_element(ratio.begin(), ratio.end());
  r.window_lo = r.ratio_series.back().x;
  r.window_hi = r.ratio_series.front().x;

  auto in_band = [&](double q) { return q >= 1.0 - epsilon && q <= 1.0 + epsilon; };
  std::size_t first = ratio.size();
  while (first > 0 && in_band(ratio[first - 1])) --first;
  if (first == ratio.size()) {
    r.verdict = Verdict::fail;
    r.notes.push_back("ratio outside [1 - eps, 1 + eps] at the smallest t");
    return r;
  }
  r.threshold = r.ratio_series[first].x;
  const double span = decades_spanned(r.ratio_series.back().x, *r.threshold);
  r.verdict = span >= 1.0 - 1e-9 ? Verdict::pass : Verdict::fail;
  r.notes.push_back("ratio within [" + fmt(1.0 - epsilon) + ", " + fmt(1.0 + epsilon) + "] for t <= t0 = " +
                    fmt(*r.threshold) + " (" + fmt(span) + " decades; at least one required)");
  return r;
}

// ---------------------------------------------------------------------------
// Classification

std::string_view to_string(Regularity r) {
  switch (r) {
    case Regularity::holomorphic: return "holomorphic";
    case Regularity::polynomial_gevrey: return "polynomial-gevrey";
    case Regularity::exponential_yosida: return "exponential-yosida";
    case Regularity::other: return "other";
    case Regularity::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

// Log-log slope of v against x over each decade bucket of x (ascending).
std::vector<double> decade_slopes(std::span<const double> x, std::span<const double> v) {
  const double x0 = x.front();
  const auto nd = std::max<std::ptrdiff_t>(1, static_cast<std::ptrdiff_t>(std::floor(decades_spanned(x0, x.back()) + 1e-9)));
  std::vector<std::ptrdiff_t> first(static_cast<std::size_t>(nd), -1), last(static_cast<std::size_t>(nd), -1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto k = static_cast<std::ptrdiff_t>(std::floor(std::log10(x[i] / x0) + 1e-9));
    k = std::clamp<std::ptrdiff_t>(k, 0, nd - 1);
    auto& f = first[static_cast<std::size_t>(k)];
    if (f < 0) f = static_cast<std::ptrdiff_t>(i);
    last[static_cast<std::size_t>(k)] = static_cast<std::ptrdiff_t>(i);
  }
  std::vector<double> out;
  for (std::size_t k = 0; k < first.size(); ++k) {
    if (first[k] < 0 || first[k] == last[k]) continue;
    const auto a = static_cast<std::size_t>(first[k]), b = static_cast<std::size_t>(last[k]);
    out.push_back(std::log(v[b] / v[a]) / std::log(x[b] / x[a]));
  }
  return out;
}

bool stable(const std::vector<double>& v, double spread) {
  if (v.size() < 2) return false;
  double lo = kInf, hi = -kInf, mean = 0.0;
  for (double s : v) {
    if (!std::isfinite(s)) return false;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
    mean += s / static_cast<double>(v.size());
  }
  return mean > 0.0 && hi - lo <= spread * mean;
}

}  // namespace

Classification classify_regularity(const GrowthCurve& curve, const SpectralModel& model, const ClassifyOptions& opt) {
  Classification out;
  auto& r = out.report;
  r.id = CheckId::holomorphic_classify;

  std::vector<double> x, th, v;
  for (std::size_t i = 0; i < curve.t.size(); ++i) {
    const double t = curve.t[i];
    r.ratio_series.push_back({t, curve.values[i], 1.0 / t, t * curve.values[i]});
    x.push_back(1.0 / t);
    th.push_back(t * curve.values[i]);
    v.push_back(curve.values[i]);
  }
  r.decade_sups = decade_sups(x, th);
  r.fitted_C = *std::max_element(th.begin(), th.end());
  r.window_lo = curve.t.back();
  r.window_hi = curve.t.front();
  const bool window_ok = decades_spanned(x.front(), x.back()) >= opt.policy.min_decades - 1e-9;
  out.semigroup_side = window_ok && bounded_nonincreasing(r.decade_sups, opt.policy.slack);

  std::vector<double> s_grid = opt.s_grid;
  if (s_grid.empty()) s_grid = log_grid(std::max(10.0, 2.0 * model.imag_bound()), 1e8, 16);
  std::vector<double> eta = opt.eta_grid.empty() ? s_grid : opt.eta_grid;
  std::sort(eta.begin(), eta.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  {
    std::vector<double> ax, prod(eta.size());
    bool singular = false;
    parallel_for(eta.size(), [&](std::size_t i) {
      const double d = dist_to_imag(model, eta[i]);
      prod[i] = d > 0.0 ? std::abs(eta[i]) / d : kInf;
    });
    for (double e : eta) ax.push_back(std::abs(e));
    for (double p : prod) singular = singular || !std::isfinite(p);
    out.resolvent_side = !singular && bounded_nonincreasing(decade_sups(ax, prod), opt.policy.slack);
  }

  out.slopes = decade_slopes(x, v);
  bool truncated = false;
  for (std::size_t i = 0; i < curve.t.size(); ++i) {
    truncated = truncated || curve.truncation[i] > curve.values[i];
  }
  if (truncated) {
    // The sampled curve reflects the lattice cut-off, not the operator.
    out.semigroup_side = false;
    r.notes.push_back("growth curve truncation-limited: the tail beyond the cut-off may exceed the sampled sup");
    bool log_envelope = false;
    bool certified = true;
    try {
      const auto M = resolvent_envelope(model, s_grid);
      std::vector<double> sx(M.grid().begin(), M.grid().end()), ratio;
      for (std::size_t i = 0; i < sx.size(); ++i) ratio.push_back(M.values()[i] / std::log(sx[i]));
      log_envelope = stable(decade_sups(sx, ratio), opt.slope_spread);
      certified = find_certificate(M).has_value();
      r.notes.push_back("resolvent envelope M(s)/log s decade sups " +
                        std::string(log_envelope ? "stable" : "unstable") + "; positive increase " +
                        (certified ? "certified" : "not certified"));
    } catch (const Error& e) {
      r.notes.push_back(std::string("resolvent envelope unavailable: ") + e.what());
    }
    if (log_envelope && !certified && !out.resolvent_side) {
      out.regularity = Regularity::exponential_yosida;
      r.notes.push_back(
          "the untruncated semigroup is not immediately differentiable at small t, so the class is read from "
          "the resolvent scale M(s) ~ log s");
    } else {
      r.notes.push_back("truncation-limited curve without a logarithmic resolvent envelope");
    }
  } else if (out.semigroup_side && out.resolvent_side) {
    out.regularity = Regularity::holomorphic;
    r.notes.push_back("t ||AT(t)|| bounded (sup " + fmt(r.fitted_C) + ") and |eta| ||R(i eta)|| bounded");
  } else if (out.semigroup_side != out.resolvent_side) {
    out.regularity = Regularity::other;
    r.notes.push_back(std::string("semigroup and resolvent sides disagree: t ||AT(t)|| ") +
                      (out.semigroup_side ? "bounded" : "unbounded") + ", |eta| ||R(i eta)|| " +
                      (out.resolvent_side ? "bounded" : "unbounded"));
  } else if (stable(out.slopes, opt.slope_spread)) {
    double mean = 0.0;
    for (double s : out.slopes) mean += s / static_cast<double>(out.slopes.size());
    if (mean > 1.0) {
      out.regularity = Regularity::polynomial_gevrey;
      out.alpha = 1.0 / mean;
      out.gevrey_beta = mean;
      r.notes.push_back("log-log slope " + fmt(mean) + ": ||AT(t)|| ~ t^(-1/alpha) with alpha = " + fmt(*out.alpha) +
                        "; Gevrey class beta for every beta > " + fmt(mean));
    } else {
      out.regularity = Regularity::other;
      r.notes.push_back("stable slope " + fmt(mean) + " <= 1 without holomorphic bounds");
    }
  } else {
    // Exponential regime: log ||AT(t)|| comparable to 1/t.
    std::vector<double> lg;
    bool positive = true;
    for (double val : v) {
      lg.push_back(std::log(val));
      positive = positive && lg.back() > 0.0;
    }
    if (positive && window_ok) {
      const auto rep = asymp_compare_series(x, lg, x, opt.policy);
      std::vector<double> tl(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) tl[i] = lg[i] / x[i];
      if (rep.relation == Relation::asymp_equiv && stable(decade_sups(x, tl), opt.slope_spread)) {
        out.regularity = Regularity::exponential_yosida;
        r.notes.push_back("t log ||AT(t)|| stable across decades");
      }
    }
    if (out.regularity == Regularity::inconclusive) {
      r.notes.push_back("ambiguous fit: per-decade slopes vary by more than " + fmt(100.0 * opt.slope_spread) + "%");
    }
  }
  r.verdict = (out.regularity == Regularity::inconclusive || out.regularity == Regularity::other)
                  ? Verdict::inconclusive
                  : Verdict::pass;
  r.notes.insert(r.notes.begin(), "class: " + std::string(to_string(out.regularity)));
  return out;
}

// ---------------------------------------------------------------------------
// Classical envelopes and the log-resolvent scale

std::pair<MonotoneFn, MonotoneFn> classical_envelopes(double alpha, std::span<const double> t_grid, double eps) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw PreconditionError("classical_envelopes: alpha must lie in (0, 1]");
  std::vector<double> tau;
  for (double t : t_grid) {
    if (!(t > 0.0)) throw ConfigError("classical_envelopes: t must be positive");
    tau.push_back(1.0 / t);
  }
  std::sort(tau.begin(), tau.end());
  tau.erase(std::unique(tau.begin(), tau.end()), tau.end());
  const double p_cp = 2.0 / alpha - 1.0;
  const double p_eb = 1.0 / alpha + eps;
  auto cp = MonotoneFn::sample([&](double x) { return std::pow(x, p_cp); }, tau, Interp::log_log);
  auto eb = MonotoneFn::sample([&](double x) { return std::pow(x, p_eb); }, tau, Interp::log_log);
  return {std::move(cp), std::move(eb)};
}

BoundReport check_classical(const GrowthCurve& curve, const MonotoneFn& M, bool eberhardt, const AsympPolicy& policy) {
  const auto cert = find_certificate(M);
  if (!cert) throw HypothesisError("classical envelope: M has no positive-increase certificate");
  const auto [cp, eb] = classical_envelopes(cert->alpha, curve.t);
  const MonotoneFn& env = eberhardt ? eb : cp;
  BoundReport r;
  r.id = eberhardt ? CheckId::classical_eberhardt : CheckId::classical_cp;
  for (std::size_t i = 0; i < curve.t.size(); ++i) {
    const double e = env(1.0 / curve.t[i]);
    r.ratio_series.push_back({curve.t[i], curve.values[i], e, curve.values[i] / e});
  }
  big_o_verdict(r, policy);
  const double p = eberhardt ? 1.0 / cert->alpha + 0.05 : 2.0 / cert->alpha - 1.0;
  r.notes.push_back("envelope t^(-" + fmt(p) + ") from certificate alpha = " + fmt(cert->alpha));
  r.notes.push_back(big_o_rule(policy));
  return r;
}

BoundReport check_yosida_log(const SpectralModel& model, std::span<const double> eta_grid, const AsympPolicy& policy) {
  std::vector<double> eta;
  for (double e : eta_grid) {
    if (std::abs(e) > std::exp(1.0)) eta.push_back(e);
  }
  std::sort(eta.begin(), eta.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  std::vector<double> res(eta.size());
  parallel_for(eta.size(), [&](std::size_t i) { res[i] = resolvent_norm_on_axis(model, eta[i]); });

  BoundReport r;
  r.id = CheckId::yosida_log;
  r.x_label = "eta";
  for (std::size_t i = 0; i < eta.size(); ++i) {
    const double lg = std::log(std::abs(eta[i]));
    r.ratio_series.push_back({eta[i], res[i], 1.0 / lg, res[i] * lg});
  }
  big_o_verdict(r, policy);
  r.notes.push_back("ratio: log|eta| ||R(i eta)||");
  try {
    const double omega = std::max(0.0, model.sup_real());
    const auto crit = log_resolvent_criterion(model, omega, eta);
    r.notes.push_back("log-resolvent criterion at omega = " + fmt(omega) + ": decade-wise max of log|eta|/dist " +
                      (crit.pass ? "decreasing (immediately differentiable)" : "not decreasing"));
  } catch (const Error& e) {
    r.notes.push_back(std::string("log-resolvent criterion unavailable: ") + e.what());
  }
  r.notes.push_back(big_o_rule(policy));
  return r;
}

}  // namespace semigrowth
