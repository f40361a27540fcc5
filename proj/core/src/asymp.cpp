#include "semigrowth/asymp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semigrowth/errors.hpp"
#include "semigrowth/grid.hpp"

namespace semigrowth {

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::big_o: return "big-O";
    case Relation::little_o: return "little-o";
    case Relation::asymp_equiv: return "asymp-equiv";
    case Relation::none: return "none";
  }
  return "none";
}

namespace {

template <class Reduce>
std::vector<double> per_decade(std::span<const double> x, std::span<const double> values,
                               double init, Reduce reduce) {
  if (x.empty() || x.size() != values.size()) throw ConfigError("decade analysis: size mismatch");
  const double lo = x.front();
  const double span = std::log10(x.back() / lo);
  const auto nd = std::max<std::ptrdiff_t>(1, static_cast<std::ptrdiff_t>(std::floor(span + 1e-9)));
  std::vector<double> out(static_cast<std::size_t>(nd), init);
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto k = static_cast<std::ptrdiff_t>(std::floor(std::log10(x[i] / lo) + 1e-9));
    k = std::clamp<std::ptrdiff_t>(k, 0, nd - 1);
    out[static_cast<std::size_t>(k)] = reduce(out[static_cast<std::size_t>(k)], values[i]);
  }
  return out;
}

}  // namespace

std::vector<double> decade_sups(std::span<const double> x, std::span<const double> values) {
  return per_decade(x, values, -std::numeric_limits<double>::infinity(),
                    [](double a, double b) { return std::max(a, b); });
}

std::vector<double> decade_infs(std::span<const double> x, std::span<const double> values) {
  return per_decade(x, values, std::numeric_limits<double>::infinity(),
                    [](double a, double b) { return std::min(a, b); });
}

bool bounded_nonincreasing(std::span<const double> sups, double slack) {
  for (double v : sups) {
    if (!std::isfinite(v)) return false;
  }
  for (std::size_t k = 1; k < sups.size(); ++k) {
    if (sups[k] > (1.0 + slack) * sups[k - 1]) return false;
  }
  return true;
}

bool decays_per_decade(std::span<const double> sups, double factor) {
  if (sups.size() < 2) return false;
  for (std::size_t k = 1; k < sups.size(); ++k) {
    if (!std::isfinite(sups[k]) || sups[k] * factor > sups[k - 1]) return false;
  }
  return true;
}

AsympReport asymp_compare_series(std::span<const double> x, std::span<const double> f,
                                 std::span<const double> g, const AsympPolicy& policy) {
  if (x.size() != f.size() || x.size() != g.size() || x.size() < 2) {
    throw ConfigError("asymp_compare: series must share at least two abscissae");
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) throw ConfigError("asymp_compare: abscissae must be strictly increasing");
  }
  if (!(x.front() > 0.0)) throw ConfigError("asymp_compare: abscissae must be positive");
  if (decades_spanned(x.front(), x.back()) < policy.min_decades - 1e-9) {
    throw ConfigError("asymp_compare: window spans fewer than " +
                      std::to_string(policy.min_decades) + " decades");
  }

  std::vector<double> fg(x.size()), gf(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    fg[i] = f[i] / g[i];
    gf[i] = g[i] / f[i];
  }

  AsympReport rep;
  rep.window_lo = x.front();
  rep.window_hi = x.back();
  rep.worst_ratio = *std::max_element(fg.begin(), fg.end());
  const double mid = std::sqrt(x.front() * x.back());
  rep.fitted_constant = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= mid) rep.fitted_constant = std::max(rep.fitted_constant, fg[i]);
  }
  rep.decade_sups = decade_sups(x, fg);
  const auto back = decade_sups(x, gf);
  rep.f_big_o_g = bounded_nonincreasing(rep.decade_sups, policy.slack);
  rep.g_big_o_f = bounded_nonincreasing(back, policy.slack);

  if (decays_per_decade(rep.decade_sups, policy.decay)) {
    rep.relation = Relation::little_o;
  } else if (rep.f_big_o_g && rep.g_big_o_f) {
    rep.relation = Relation::asymp_equiv;
  } else if (rep.f_big_o_g) {
    rep.relation = Relation::big_o;
  } else {
    rep.relation = Relation::none;
  }
  return rep;
}

AsympReport asymp_compare(const MonotoneFn& f, const MonotoneFn& g, double lo, double hi,
                          const AsympPolicy& policy, int per_decade) {
  if (!(lo > 0.0) || !(hi > lo)) throw ConfigError("asymp_compare: need 0 < lo < hi");
  if (decades_spanned(lo, hi) < policy.min_decades - 1e-9) {
    throw ConfigError("asymp_compare: window spans fewer than " +
                      std::to_string(policy.min_decades) + " decades");
  }
  const auto x = log_grid(lo, hi, per_decade);
  std::vector<double> fv, gv;
  fv.reserve(x.size());
  gv.reserve(x.size());
  for (double t : x) {
    fv.push_back(f(t));
    gv.push_back(g(t));
  }
  return asymp_compare_series(x, fv, gv, policy);
}

}  // namespace semigrowth
