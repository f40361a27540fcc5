#include "semigrowth/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "branch_bound.hpp"
#include "semigrowth/errors.hpp"
#include "semigrowth/parallel.hpp"

namespace semigrowth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Largest index for which doubles still represent every integer.
constexpr double kMaxIndex = 9007199254740992.0;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Last k in [1, k_max] with g(k) == 0, or 0 if g(1) > 0.
double last_zero_index(const Profile& g, double k_max) {
  if (profile_value(g, 1.0) > 0.0) return 0.0;
  double lo = 1.0, hi = 2.0;
  while (hi <= k_max && profile_value(g, hi) == 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  hi = std::min(hi, k_max + 1.0);
  while (hi - lo > 1.0) {
    const double mid = std::floor(0.5 * (lo + hi));
    if (profile_value(g, mid) == 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// Smallest integer k in [1, k_max] with g(k) >= level, or nullopt.
std::optional<double> first_index_reaching(const Profile& g, double level, double k_max) {
  if (profile_value(g, 1.0) >= level) return 1.0;
  if (profile_value(g, k_max) < level) return std::nullopt;
  double lo = 1.0, hi = k_max;
  while (hi - lo > 1.0) {
    const double mid = std::floor(0.5 * (lo + hi));
    if (profile_value(g, mid) >= level) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double lattice_extent(const LatticeFamily& lat) {
  return std::isinf(lat.k_max) ? kMaxIndex : lat.k_max;
}

}  // namespace

double profile_value(const Profile& g, double k) {
  return std::visit(overloaded{
                        [k](const PowerProfile& p) { return p.scale * std::pow(k, p.exponent); },
                        [k](const LogProfile& p) { return p.scale * std::log(k); },
                        [k](const MonotoneFn& f) { return f(k); },
                    },
                    g);
}

double profile_limit(const Profile& g) {
  if (const auto* f = std::get_if<MonotoneFn>(&g)) return f->domain_end();
  return kInf;
}

bool profile_unbounded(const Profile& g) {
  return std::visit(overloaded{
                        [](const PowerProfile& p) { return p.exponent > 0.0 && p.scale > 0.0; },
                        [](const LogProfile& p) { return p.scale > 0.0; },
                        [](const MonotoneFn&) { return false; },
                    },
                    g);
}

// ---------------------------------------------------------------------------
// SpectralModel

SpectralModel::SpectralModel(Variant v, double b) : v_(std::move(v)), b_(b) { validate(); }

SpectralModel SpectralModel::finite(std::vector<Complex> points, double imag_bound) {
  return SpectralModel(FinitePoints{std::move(points)}, imag_bound);
}

SpectralModel SpectralModel::lattice(Profile profile, double k_max, double imag_bound) {
  return SpectralModel(LatticeFamily{std::move(profile), k_max}, imag_bound);
}

SpectralModel SpectralModel::curve(std::vector<Complex> points, double imag_bound) {
  return SpectralModel(SampledCurve{std::move(points)}, imag_bound);
}

SpectralModel SpectralModel::union_of(std::vector<SpectralModel> members, double imag_bound) {
  return SpectralModel(UnionModel{std::move(members)}, imag_bound);
}

void SpectralModel::validate() {
  if (!(b_ >= 0.0) || !std::isfinite(b_)) throw ConfigError("spectral model: imag bound must be finite and >= 0");
  auto check_points = [this](const std::vector<Complex>& pts) {
    if (pts.empty()) throw DomainError("spectral model: empty point set");
    for (const auto& z : pts) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw ConfigError("spectral model: non-finite point");
      }
      if (z.real() == 0.0 && std::abs(z.imag()) >= b_) {
        throw ConfigError("spectral model: axis point " + fmt(z.imag()) +
                          "i outside (-ib, ib) with b = " + fmt(b_));
      }
      sup_re_ = std::max(sup_re_, z.real());
    }
  };

  std::visit(overloaded{
                 [&](const FinitePoints& f) { check_points(f.points); },
                 [&](const SampledCurve& c) {
                   check_points(c.points);
                   for (std::size_t i = 1; i < c.points.size(); ++i) {
                     if (c.points[i].imag() < c.points[i - 1].imag()) {
                       throw ConfigError("sampled curve: points must be ordered by imaginary part");
                     }
                   }
                 },
                 [&](const LatticeFamily& lat) {
                   if (!(lat.k_max >= 1.0)) throw ConfigError("lattice: k_max must be >= 1");
                   if (std::isfinite(lat.k_max) && lat.k_max > kMaxIndex) {
                     throw ConfigError("lattice: k_max exceeds 2^53");
                   }
                   if (std::isinf(lat.k_max) && !profile_unbounded(lat.profile)) {
                     throw ConfigError("lattice: infinite k_max needs an unbounded profile (non-integrable tail)");
                   }
                   if (lat.k_max > profile_limit(lat.profile)) {
                     throw ConfigError("lattice: k_max beyond the sampled profile domain");
                   }
                   if (const auto* p = std::get_if<PowerProfile>(&lat.profile)) {
                     if (!(p->scale >= 0.0) || !(p->exponent >= 0.0)) {
                       throw ConfigError("lattice: power profile needs scale >= 0 and exponent >= 0");
                     }
                   }
                   if (const auto* p = std::get_if<LogProfile>(&lat.profile)) {
                     if (!(p->scale >= 0.0)) throw ConfigError("lattice: log profile needs scale >= 0");
                   }
                   if (const auto* f = std::get_if<MonotoneFn>(&lat.profile)) {
                     if (f->domain_start() > 1.0) throw ConfigError("lattice: sampled profile must start at k <= 1");
                   }
                   const double k0 = last_zero_index(lat.profile, lattice_extent(lat));
                   if (k0 > 0.0 && k0 >= b_) {
                     throw ConfigError("lattice: axis points up to " + fmt(k0) +
                                       "i require imag bound b > " + fmt(k0));
                   }
                   sup_re_ = -profile_value(lat.profile, 1.0);
                 },
                 [&](const UnionModel& u) {
                   if (u.members.empty()) throw DomainError("spectral model: empty union");
                   for (const auto& m : u.members) {
                     if (m.imag_bound() > b_) {
                       throw ConfigError("union: member imag bound exceeds the union's bound");
                     }
                     sup_re_ = std::max(sup_re_, m.sup_real());
                   }
                 },
             },
             v_);
}

std::vector<Complex> SpectralModel::points(double lattice_limit) const {
  return std::visit(overloaded{
                        [](const FinitePoints& f) { return f.points; },
                        [](const SampledCurve& c) { return c.points; },
                        [&](const LatticeFamily& lat) {
                          std::vector<Complex> out;
                          const double n = std::min(lattice_extent(lat), lattice_limit);
                          for (double k = 1.0; k <= n; k += 1.0) {
                            const double re = -profile_value(lat.profile, k);
                            out.emplace_back(re, -k);
                            out.emplace_back(re, k);
                          }
                          std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
                            return a.imag() < b.imag();
                          });
                          return out;
                        },
                        [&](const UnionModel& u) {
                          std::vector<Complex> out;
                          for (const auto& m : u.members) {
                            auto p = m.points(lattice_limit);
                            out.insert(out.end(), p.begin(), p.end());
                          }
                          return out;
                        },
                    },
                    v_);
}

// ---------------------------------------------------------------------------
// Distances

namespace {

NearestPoint nearest_in_list(const std::vector<Complex>& pts, Complex lambda) {
  NearestPoint best{kInf, {}};
  for (const auto& z : pts) {
    const double d = std::abs(lambda - z);
    if (d < best.distance) best = {d, z};
  }
  return best;
}

// Points sorted by imaginary part: expand outward from the nearest height
// until the height gap alone exceeds the incumbent.
NearestPoint nearest_in_curve(const std::vector<Complex>& pts, Complex lambda) {
  const auto it = std::lower_bound(pts.begin(), pts.end(), lambda.imag(),
                                   [](Complex z, double y) { return z.imag() < y; });
  NearestPoint best{kInf, {}};
  for (auto up = it; up != pts.end(); ++up) {
    if (up->imag() - lambda.imag() >= best.distance) break;
    const double d = std::abs(lambda - *up);
    if (d < best.distance) best = {d, *up};
  }
  for (auto down = it; down != pts.begin();) {
    --down;
    if (lambda.imag() - down->imag() >= best.distance) break;
    const double d = std::abs(lambda - *down);
    if (d < best.distance) best = {d, *down};
  }
  return best;
}

NearestPoint nearest_in_lattice(const LatticeFamily& lat, Complex lambda) {
  const double x = lambda.real();
  const double y = std::abs(lambda.imag());
  const double sign = lambda.imag() < 0.0 ? -1.0 : 1.0;
  const auto& g = lat.profile;
  auto sq = [](double v) { return v * v; };

  // Maximize the negated squared distance.
  auto eval = [&](double k) { return -(sq(x + profile_value(g, k)) + sq(y - k)); };
  auto upper = [&](double a, double b) {
    const double ga = profile_value(g, a), gb = profile_value(g, b);
    const double dx = (-x >= ga && -x <= gb) ? 0.0 : std::min(std::abs(x + ga), std::abs(x + gb));
    const double dy = (y >= a && y <= b) ? 0.0 : std::min(std::abs(y - a), std::abs(y - b));
    return -(dx * dx + dy * dy);
  };
  const auto r = detail::maximize_over_integers(1.0, lattice_extent(lat), eval, upper);
  return {std::sqrt(-r.value), Complex(-profile_value(g, r.argmax), sign * r.argmax)};
}

}  // namespace

NearestPoint nearest_point(const SpectralModel& model, Complex lambda) {
  return std::visit(overloaded{
                        [&](const FinitePoints& f) { return nearest_in_list(f.points, lambda); },
                        [&](const SampledCurve& c) { return nearest_in_curve(c.points, lambda); },
                        [&](const LatticeFamily& lat) { return nearest_in_lattice(lat, lambda); },
                        [&](const UnionModel& u) {
                          NearestPoint best{kInf, {}};
                          for (const auto& m : u.members) {
                            const auto p = nearest_point(m, lambda);
                            if (p.distance < best.distance) best = p;
                          }
                          return best;
                        },
                    },
                    model.variant());
}

double dist(const SpectralModel& model, Complex lambda) { return nearest_point(model, lambda).distance; }

double dist_to_imag(const SpectralModel& model, double eta) { return dist(model, Complex(0.0, eta)); }

double resolvent_norm_on_axis(const SpectralModel& model, double eta) {
  const double d = dist_to_imag(model, eta);
  if (!(d > 0.0)) throw SingularityError("resolvent: i*" + fmt(eta) + " lies in the spectrum");
  return 1.0 / d;
}

// ---------------------------------------------------------------------------
// Resolvent envelope

namespace {

// inf over |eta| >= s of |i eta - z| = sqrt(Re(z)^2 + max(0, s - |Im z|)^2).
double point_envelope(Complex z, double s) {
  const double gap = std::max(0.0, s - std::abs(z.imag()));
  return std::hypot(z.real(), gap);
}

EnvelopePoint envelope_in_list(const std::vector<Complex>& pts, double s) {
  EnvelopePoint best{kInf, {}};
  for (const auto& z : pts) {
    const double v = point_envelope(z, s);
    if (v < best.value) best = {v, z};
  }
  return best;
}

EnvelopePoint envelope_in_lattice(const LatticeFamily& lat, double s) {
  const auto& g = lat.profile;
  const double extent = lattice_extent(lat);
  EnvelopePoint best{kInf, {}};
  // Indices k >= s contribute g(k) >= g(ceil s).
  const double kc = std::max(1.0, std::ceil(s));
  if (kc <= extent) best = {profile_value(g, kc), Complex(-profile_value(g, kc), kc)};
  // Indices below s: sqrt(g(k)^2 + (s - k)^2).
  const double hi = std::min(kc - 1.0, extent);
  if (hi >= 1.0) {
    auto eval = [&](double k) {
      const double gk = profile_value(g, k);
      return -(gk * gk + (s - k) * (s - k));
    };
    auto upper = [&](double a, double b) {
      const double ga = profile_value(g, a);
      return -(ga * ga + (s - b) * (s - b));
    };
    const auto r = detail::maximize_over_integers(1.0, hi, eval, upper);
    const double v = std::sqrt(-r.value);
    if (v < best.value) best = {v, Complex(-profile_value(g, r.argmax), r.argmax)};
  }
  return best;
}

}  // namespace

EnvelopePoint envelope_at(const SpectralModel& model, double s) {
  return std::visit(overloaded{
                        [&](const FinitePoints& f) { return envelope_in_list(f.points, s); },
                        [&](const SampledCurve& c) { return envelope_in_list(c.points, s); },
                        [&](const LatticeFamily& lat) { return envelope_in_lattice(lat, s); },
                        [&](const UnionModel& u) {
                          EnvelopePoint best{kInf, {}};
                          for (const auto& m : u.members) {
                            const auto p = envelope_at(m, s);
                            if (p.value < best.value) best = p;
                          }
                          return best;
                        },
                    },
                    model.variant());
}

MonotoneFn resolvent_envelope(const SpectralModel& model, std::span<const double> s_grid) {
  if (s_grid.size() < 2) throw ConfigError("resolvent_envelope: need at least two grid points");
  if (!(s_grid.front() > model.imag_bound()) || !(s_grid.front() > 0.0)) {
    throw DomainError("resolvent_envelope: grid must lie in (b, inf) with b = " + fmt(model.imag_bound()));
  }
  std::vector<double> s(s_grid.begin(), s_grid.end());
  std::vector<double> m(s.size());
  parallel_for(s.size(), [&](std::size_t i) { m[i] = envelope_at(model, s[i]).value; });
  for (std::size_t i = m.size() - 1; i-- > 0;) m[i] = std::min(m[i], m[i + 1]);
  if (!(m.front() > 0.0)) {
    throw ModelError("resolvent_envelope: envelope vanishes at s = " + fmt(s.front()));
  }
  if (!(m.back() >= 2.0 * m.front())) {
    throw ModelError("resolvent_envelope: envelope does not diverge on the grid (M(end)/M(start) = " +
                     fmt(m.back() / m.front()) + " < 2); quasi-multiplication hypotheses unmet");
  }
  return MonotoneFn(std::move(s), std::move(m), Interp::log_log);
}

// ---------------------------------------------------------------------------
// Semigroup derivative norm

namespace {

struct LatticeSup {
  double log_value = -kInf;
  double argmax = 1.0;
  bool certified = true;
};

LatticeSup lattice_sup(const Profile& g, double t, double k_hi) {
  auto eval = [&](double k) {
    const double gk = profile_value(g, k);
    return 0.5 * std::log(gk * gk + k * k) - t * gk;
  };
  auto upper = [&](double a, double b) {
    const double gb = profile_value(g, b);
    return 0.5 * std::log(gb * gb + b * b) - t * profile_value(g, a);
  };
  detail::IntMaxOptions opt;
  opt.abs_tol = 1e-10;  // log scale: relative accuracy of the sup
  const auto r = detail::maximize_over_integers(1.0, k_hi, eval, upper, opt);
  return {r.value, r.argmax, r.certified};
}

// Bound on sup_{k > K} log(|z_k| e^{-t g(k)}) from a doubling scan; +inf when
// the interval bounds stop decreasing before 1e300.
double lattice_tail_log_bound(const Profile& g, double t, double K, double best_log) {
  double worst = -kInf;
  double prev = kInf, prev_drop = -kInf;
  int steady = 0;
  for (double lo = K; lo < 1e300; lo *= 2.0) {
    const double hi = 2.0 * lo;
    const double ghi = profile_value(g, hi);
    const double ub = 0.5 * std::log(ghi * ghi + hi * hi) - t * profile_value(g, lo);
    worst = std::max(worst, ub);
    const double drop = prev - ub;
    steady = (drop > 0.0 && drop >= prev_drop - 1e-12) ? steady + 1 : 0;
    if (steady >= 4 && ub < best_log - 50.0) return worst;
    prev = ub;
    prev_drop = drop;
  }
  return kInf;
}

SemigroupNorm lattice_norm(const LatticeFamily& lat, double t) {
  const auto& g = lat.profile;
  SemigroupNorm out;
  auto finish = [&](const LatticeSup& s, double tail_log) {
    out.value = std::exp(s.log_value);
    out.maximizer = Complex(-profile_value(g, s.argmax), s.argmax);
    out.truncation_bound = std::exp(tail_log);
    out.certified = s.certified;
  };
  if (std::isfinite(lat.k_max)) {
    const auto s = lattice_sup(g, t, lat.k_max);
    const bool closed_form = !std::holds_alternative<MonotoneFn>(g);
    const double tail = (closed_form && lat.k_max < kMaxIndex)
                            ? lattice_tail_log_bound(g, t, lat.k_max, s.log_value)
                            : -kInf;
    finish(s, tail);
    return out;
  }
  // Unbounded index range: widen the scan until the tail is negligible.
  for (double K = 1e6; K <= kMaxIndex; K *= 1e3) {
    const auto s = lattice_sup(g, t, K);
    const double tail = lattice_tail_log_bound(g, t, K, s.log_value);
    if (tail <= s.log_value + std::log(1e-9)) {
      finish(s, tail);
      return out;
    }
  }
  throw ConfigError("semigroup norm: tail not summable for t = " + fmt(t) +
                    " (profile grows too slowly for an infinite lattice)");
}

}  // namespace

SemigroupNorm semigroup_derivative_norm_detail(const SpectralModel& model, double t) {
  if (!(t > 0.0)) throw PreconditionError("semigroup norm: t must be positive");
  return std::visit(
      overloaded{
          [&](const FinitePoints& f) {
            SemigroupNorm out;
            out.value = -kInf;
            for (const auto& z : f.points) {
              const double v = std::abs(z) * std::exp(t * z.real());
              if (v > out.value) {
                out.value = v;
                out.maximizer = z;
              }
            }
            return out;
          },
          [&](const SampledCurve& c) {
            SemigroupNorm out;
            out.value = -kInf;
            for (const auto& z : c.points) {
              const double v = std::abs(z) * std::exp(t * z.real());
              if (v > out.value) {
                out.value = v;
                out.maximizer = z;
              }
            }
            return out;
          },
          [&](const LatticeFamily& lat) { return lattice_norm(lat, t); },
          [&](const UnionModel& u) {
            SemigroupNorm out;
            out.value = -kInf;
            for (const auto& m : u.members) {
              const auto r = semigroup_derivative_norm_detail(m, t);
              if (r.value > out.value) {
                out.value = r.value;
                out.maximizer = r.maximizer;
              }
              out.truncation_bound = std::max(out.truncation_bound, r.truncation_bound);
              out.certified = out.certified && r.certified;
            }
            return out;
          },
      },
      model.variant());
}

double semigroup_derivative_norm(const SpectralModel& model, double t) {
  return semigroup_derivative_norm_detail(model, t).value;
}

// ---------------------------------------------------------------------------
// Theta region

namespace {

std::optional<Complex> point_in_theta(const SpectralModel& model, const ThetaParams& p) {
  auto in_theta = [&](Complex z) {
    return z.real() <= p.omega && p.p * std::exp(-p.q * z.real()) <= std::abs(z.imag());
  };
  return std::visit(
      overloaded{
          [&](const FinitePoints& f) -> std::optional<Complex> {
            for (const auto& z : f.points) {
              if (in_theta(z)) return z;
            }
            return std::nullopt;
          },
          [&](const SampledCurve& c) -> std::optional<Complex> {
            for (const auto& z : c.points) {
              if (in_theta(z)) return z;
            }
            return std::nullopt;
          },
          [&](const LatticeFamily& lat) -> std::optional<Complex> {
            const auto& g = lat.profile;
            const double extent = lattice_extent(lat);
            // Re z_k = -g(k) <= omega  <=>  g(k) >= -omega.
            const auto k0 = first_index_reaching(g, -p.omega, extent);
            if (!k0) return std::nullopt;
            const double lp = std::log(p.p);
            auto eval = [&](double k) { return std::log(k) - lp - p.q * profile_value(g, k); };
            auto upper = [&](double a, double b) { return std::log(b) - lp - p.q * profile_value(g, a); };
            detail::IntMaxOptions opt;
            opt.target = 0.0;
            const auto r = detail::maximize_over_integers(*k0, extent, eval, upper, opt);
            if (r.value >= 0.0) return Complex(-profile_value(g, r.argmax), r.argmax);
            return std::nullopt;
          },
          [&](const UnionModel& u) -> std::optional<Complex> {
            for (const auto& m : u.members) {
              if (auto z = point_in_theta(m, p)) return z;
            }
            return std::nullopt;
          },
      },
      model.variant());
}

}  // namespace

ThetaVerdict theta_region_check(const SpectralModel& model, const ThetaParams& params) {
  if (!(params.p > 0.0) || !(params.q > 0.0) || !(params.resolvent_slope > 0.0)) {
    throw ConfigError("theta: p, q and C must be positive");
  }
  ThetaVerdict v;
  v.spectral_point_in_region = point_in_theta(model, params);
  v.region_clear = !v.spectral_point_in_region.has_value();

  // Probe the boundary |Im| = p e^{-q Re} for Re <= omega, pushed into Theta
  // by raising |Im| up to one decade.
  const double y0 = params.p * std::exp(-params.q * params.omega);
  const auto steps = static_cast<int>(std::ceil(params.probe_decades * params.probes_per_decade));
  for (int d = 0; d <= steps && v.resolvent_ok; ++d) {
    const double y = y0 * std::pow(10.0, static_cast<double>(d) / params.probes_per_decade);
    const double x = -std::log(y / params.p) / params.q;
    for (int j = 0; j < params.offsets && v.resolvent_ok; ++j) {
      const double yj = y * std::pow(10.0, static_cast<double>(j) / params.offsets);
      for (double sign : {1.0, -1.0}) {
        const Complex lambda(x, sign * yj);
        ++v.probes;
        const double dd = dist(model, lambda);
        if (!(dd > 0.0) || 1.0 / dd > params.resolvent_slope * yj) {
          v.resolvent_ok = false;
          v.first_violating_probe = lambda;
          break;
        }
      }
    }
  }
  return v;
}

LogResolventReport log_resolvent_criterion(const SpectralModel& model, double omega,
                                           std::span<const double> eta_grid) {
  if (omega < model.sup_real()) {
    throw DomainError("log_resolvent_criterion: omega = " + fmt(omega) +
                      " below sup Re sigma(A) = " + fmt(model.sup_real()));
  }
  LogResolventReport rep;
  rep.eta.assign(eta_grid.begin(), eta_grid.end());
  rep.values.resize(rep.eta.size());
  parallel_for(rep.eta.size(), [&](std::size_t i) {
    const double e = rep.eta[i];
    const double d = dist(model, Complex(omega, e));
    if (!(d > 0.0)) throw SingularityError("log_resolvent_criterion: omega + i eta in the spectrum");
    rep.values[i] = std::log(std::abs(e)) / d;
  });
  const std::vector<double> ones(rep.eta.size(), 1.0);
  rep.asymp = asymp_compare_series(rep.eta, rep.values, ones);
  rep.pass = true;
  for (std::size_t k = 1; k < rep.asymp.decade_sups.size(); ++k) {
    if (!(rep.asymp.decade_sups[k] < rep.asymp.decade_sups[k - 1])) rep.pass = false;
  }
  return rep;
}

double liminf_axis_growth(const SpectralModel& model, std::span<const double> eta_grid) {
  if (eta_grid.empty()) throw ConfigError("liminf_axis_growth: empty grid");
  const double top = *std::max_element(eta_grid.begin(), eta_grid.end(),
                                       [](double a, double b) { return std::abs(a) < std::abs(b); });
  double out = kInf;
  for (double e : eta_grid) {
    if (std::abs(e) >= std::abs(top) / 10.0) {
      out = std::min(out, std::abs(e) * resolvent_norm_on_axis(model, e));
    }
  }
  return out;
}

}  // namespace semigrowth
