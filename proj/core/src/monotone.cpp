#include "semigrowth/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "semigrowth/errors.hpp"

namespace semigrowth {

namespace {

constexpr double kEdgeSlack = 1e-12;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

}  // namespace

MonotoneFn::MonotoneFn(std::vector<double> grid, std::vector<double> values, Interp mode,
                       double dip_tolerance)
    : grid_(std::move(grid)), values_(std::move(values)), mode_(mode) {
  if (grid_.size() < 2) throw ConfigError("MonotoneFn: need at least two knots");
  if (grid_.size() != values_.size()) throw ConfigError("MonotoneFn: grid/values size mismatch");
  if (!(grid_.front() >= 0.0) || (mode_ == Interp::log_log && !(grid_.front() > 0.0))) {
    throw ConfigError("MonotoneFn: domain start must be positive (non-negative for linear)");
  }
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (!std::isfinite(grid_[i]) || !std::isfinite(values_[i])) {
      throw ConfigError("MonotoneFn: non-finite knot or value at index " + std::to_string(i));
    }
    if (!(values_[i] > 0.0)) {
      throw ConfigError("MonotoneFn: value at s=" + fmt(grid_[i]) + " is not positive");
    }
    if (i > 0 && !(grid_[i] > grid_[i - 1])) {
      throw ConfigError("MonotoneFn: grid not strictly increasing at index " + std::to_string(i));
    }
  }
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (values_[i] < values_[i - 1]) {
      if (values_[i - 1] - values_[i] > dip_tolerance * values_[i - 1]) {
        throw ConfigError("MonotoneFn: values decrease at s=" + fmt(grid_[i]));
      }
      values_[i] = values_[i - 1];
    }
  }
}

bool MonotoneFn::contains(double s) const {
  const double lo = grid_.front() - kEdgeSlack * std::abs(grid_.front());
  const double hi = grid_.back() * (1.0 + kEdgeSlack);
  return s >= lo && s <= hi;
}

double MonotoneFn::interpolate_segment(std::size_t i, double s) const {
  const double s0 = grid_[i], s1 = grid_[i + 1];
  const double v0 = values_[i], v1 = values_[i + 1];
  if (s <= s0) return v0;
  if (s >= s1) return v1;
  if (v0 == v1) return v0;
  if (mode_ == Interp::linear) {
    return v0 + (v1 - v0) * ((s - s0) / (s1 - s0));
  }
  const double w = std::log(s / s0) / std::log(s1 / s0);
  return v0 * std::exp(w * std::log(v1 / v0));
}

double MonotoneFn::invert_segment(std::size_t i, double level) const {
  const double s0 = grid_[i], s1 = grid_[i + 1];
  const double v0 = values_[i], v1 = values_[i + 1];
  if (level <= v0) return s0;
  if (level >= v1) return s1;
  if (mode_ == Interp::linear) {
    return s0 + (s1 - s0) * ((level - v0) / (v1 - v0));
  }
  const double w = std::log(level / v0) / std::log(v1 / v0);
  return std::min(s1, std::max(s0, s0 * std::exp(w * std::log(s1 / s0))));
}

double MonotoneFn::operator()(double s) const {
  if (!contains(s)) {
    throw DomainError("evaluate: s=" + fmt(s) + " outside [" + fmt(grid_.front()) + ", " +
                      fmt(grid_.back()) + "]");
  }
  if (s <= grid_.front()) return values_.front();
  if (s >= grid_.back()) return values_.back();
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), s);
  const auto i = static_cast<std::size_t>(it - grid_.begin()) - 1;
  return interpolate_segment(i, s);
}

MonotoneFn MonotoneFn::slice(std::size_t first, std::size_t last) const {
  if (first >= last || last >= grid_.size()) throw ConfigError("MonotoneFn::slice: bad range");
  return MonotoneFn({grid_.begin() + first, grid_.begin() + last + 1},
                    {values_.begin() + first, values_.begin() + last + 1}, mode_);
}

double evaluate(const MonotoneFn& f, double s) { return f(s); }

double left_inverse(const MonotoneFn& f, double t) {
  const auto v = f.values();
  if (t <= v.front()) return f.domain_start();
  if (t > v.back()) {
    throw RangeError("left_inverse: level " + fmt(t) + " above attained maximum " + fmt(v.back()));
  }
  // First knot reaching the level; the previous knot is strictly below it.
  const auto it = std::lower_bound(v.begin(), v.end(), t);
  const auto j = static_cast<std::size_t>(it - v.begin());
  if (v[j] == t) return f.grid()[j];
  return f.invert_segment(j - 1, t);
}

double right_inverse(const MonotoneFn& f, double t) {
  const auto v = f.values();
  if (t >= v.back()) return f.domain_end();
  if (t < v.front()) {
    throw RangeError("right_inverse: level " + fmt(t) + " below attained minimum " +
                     fmt(v.front()));
  }
  // Last knot not exceeding the level; the next knot is strictly above it.
  const auto it = std::upper_bound(v.begin(), v.end(), t);
  const auto j = static_cast<std::size_t>(it - v.begin()) - 1;
  if (v[j] == t) return f.grid()[j];
  return f.invert_segment(j, t);
}

MLogResult m_log_transform(const MonotoneFn& f) {
  const auto s = f.grid();
  const auto v = f.values();
  const std::size_t n = s.size();

  // Longest suffix on which f(s) < s.
  std::size_t start = n;
  while (start > 0 && v[start - 1] < s[start - 1]) --start;
  if (start == n) throw DomainError("m_log_transform: f(s) >= s on every knot");
  if (n - start < 2) throw DomainError("m_log_transform: valid domain has fewer than two knots");

  MLogResult out{MonotoneFn({1.0, 2.0}, {1.0, 1.0}), 0.0, 0, false, 0.0, std::nullopt, {}, {}};
  out.valid_from = s[start];
  out.excluded_points = start;
  for (std::size_t i = start; i < n; ++i) {
    out.raw_grid.push_back(s[i]);
    out.raw_values.push_back(v[i] / std::log(s[i] / v[i]));
  }

  const auto& r = out.raw_values;
  std::size_t mono = r.size() - 1;
  while (mono > 0 && r[mono - 1] <= r[mono]) --mono;
  out.nondecreasing = (mono == 0);
  out.monotone_from = out.raw_grid[mono];
  if (mono > 0) out.last_decreasing_pair = std::make_pair(out.raw_grid[mono - 1], out.raw_grid[mono]);
  if (r.size() - mono < 2) {
    throw DomainError("m_log_transform: transform decreases up to the last knot");
  }
  out.function = MonotoneFn({out.raw_grid.begin() + static_cast<std::ptrdiff_t>(mono), out.raw_grid.end()},
                            {r.begin() + static_cast<std::ptrdiff_t>(mono), r.end()}, f.mode());
  return out;
}

namespace {

// h(u) = f(s e^u) / u with the argument clamped to the sampled domain.
struct LambdaObjective {
  const MonotoneFn& f;
  double s;
  double u_max;
  double operator()(double u) const {
    const double x = (u >= u_max) ? f.domain_end() : std::min(f.domain_end(), s * std::exp(u));
    return f(x) / u;
  }
};

double golden_section(const LambdaObjective& h, double a, double b, double rel_tol, double& fmin) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = h(c), fd = h(d);
  while (b - a > rel_tol * std::max(std::abs(a), std::abs(b))) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = h(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = h(d);
    }
  }
  if (fc <= fd) {
    fmin = fc;
    return c;
  }
  fmin = fd;
  return d;
}

}  // namespace

std::optional<MInfPoint> try_m_inf_at(const MonotoneFn& f, double s, const MInfOptions& opt) {
  if (!f.contains(s)) {
    throw DomainError("m_inf: s=" + fmt(s) + " outside the sampled domain");
  }
  const double lambda_max = f.domain_end() / s;
  if (!(lambda_max > 1.0 + 1e-9)) return std::nullopt;
  const double u_max = std::log(lambda_max);
  const double u_min = u_max * opt.scan_floor;
  const LambdaObjective h{f, s, u_max};

  const double decades = std::log10(u_max / u_min);
  const auto n = static_cast<std::size_t>(std::ceil(decades * opt.scan_per_decade)) + 1;
  std::vector<double> u(n), hv(n);
  for (std::size_t j = 0; j < n; ++j) {
    u[j] = (j + 1 == n) ? u_max : u_min * std::pow(10.0, static_cast<double>(j) / opt.scan_per_decade);
    hv[j] = h(u[j]);
  }
  const auto jmin = static_cast<std::size_t>(std::min_element(hv.begin(), hv.end()) - hv.begin());
  double best = hv[jmin];

  // lambda_2: past the minimizer, the scan must rise above best + 1 and stay there.
  std::size_t j2 = n;
  for (std::size_t j = n; j-- > jmin + 1;) {
    if (hv[j] >= best + 1.0) {
      j2 = j;
    } else {
      break;
    }
  }
  if (j2 == n) return std::nullopt;

  const double a = u[jmin == 0 ? 0 : jmin - 1];
  const double b = u[std::min(jmin + 1, n - 1)];
  double refined = best;
  double u_star = u[jmin];
  if (b > a) {
    const double ug = golden_section(h, a, b, opt.rel_tol, refined);
    if (refined < best) {
      best = refined;
      u_star = ug;
    }
  }

  MInfPoint p;
  p.value = best;
  p.minimizer = std::exp(u_star);
  p.bracket_lo = std::exp(f(s) / (best + 1.0));
  p.bracket_hi = std::exp(u[j2]);
  return p;
}

std::optional<double> m_inf_max_admissible(const MonotoneFn& f, const MInfOptions& opt) {
  const auto g = f.grid();
  // Admissibility is monotone in s: a larger s leaves a shorter lambda range.
  if (!try_m_inf_at(f, g.front(), opt)) return std::nullopt;
  std::size_t lo = 0, hi = g.size() - 1;
  if (try_m_inf_at(f, g[hi], opt)) return g[hi];
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (try_m_inf_at(f, g[mid], opt)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return g[lo];
}

MInfPoint m_inf_at(const MonotoneFn& f, double s, const MInfOptions& opt) {
  if (auto p = try_m_inf_at(f, s, opt)) return *p;
  const auto adm = m_inf_max_admissible(f, opt);
  throw DomainError("m_inf: minimizing bracket at s=" + fmt(s) +
                    " exceeds the sampled domain; largest admissible s is " +
                    (adm ? fmt(*adm) : std::string("none")));
}

MonotoneFn m_inf_transform(const MonotoneFn& f, const MInfOptions& opt) {
  std::vector<double> xs, ys;
  for (double s : f.grid()) {
    const auto p = try_m_inf_at(f, s, opt);
    if (!p) break;
    xs.push_back(s);
    ys.push_back(p->value);
  }
  if (xs.size() < 2) {
    throw DomainError("m_inf_transform: fewer than two admissible knots; extend the sampled domain");
  }
  return MonotoneFn(std::move(xs), std::move(ys), f.mode(), 1e-8);
}

MonotoneFn m_inf_transform(const MonotoneFn& f, std::span<const double> points,
                           const MInfOptions& opt) {
  std::vector<double> xs(points.begin(), points.end()), ys;
  ys.reserve(xs.size());
  for (double s : xs) ys.push_back(m_inf_at(f, s, opt).value);
  return MonotoneFn(std::move(xs), std::move(ys), f.mode(), 1e-8);
}

}  // namespace semigrowth
