#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace semigrowth {

enum class Interp {
  linear,   ///< piecewise linear in (s, value)
  log_log,  ///< piecewise linear in (log s, log value); exact for power laws
};

/// Grid-sampled, non-decreasing, strictly positive function of one real
/// variable. Evaluation interpolates between knots according to `Interp` and
/// never extrapolates: queries outside [front, back] of the grid throw.
///
/// Construction accepts relative dips up to `dip_tolerance` (upstream
/// floating noise) and removes them with a running maximum. Larger dips,
/// non-positive values or a non-increasing grid are rejected.
class MonotoneFn {
 public:
  static constexpr double kDefaultDipTolerance = 1e-12;

  MonotoneFn(std::vector<double> grid, std::vector<double> values,
             Interp mode = Interp::log_log,
             double dip_tolerance = kDefaultDipTolerance);

  /// Samples `f` on `grid`.
  template <class F>
  static MonotoneFn sample(F&& f, std::vector<double> grid, Interp mode = Interp::log_log,
                           double dip_tolerance = kDefaultDipTolerance) {
    std::vector<double> values;
    values.reserve(grid.size());
    for (double s : grid) values.push_back(f(s));
    return MonotoneFn(std::move(grid), std::move(values), mode, dip_tolerance);
  }

  double domain_start() const { return grid_.front(); }
  double domain_end() const { return grid_.back(); }
  double min_value() const { return values_.front(); }
  double max_value() const { return values_.back(); }
  std::size_t size() const { return grid_.size(); }
  Interp mode() const { return mode_; }
  std::span<const double> grid() const { return grid_; }
  std::span<const double> values() const { return values_; }

  bool contains(double s) const;

  /// Interpolated value; exact at knots. Throws DomainError outside the grid.
  double operator()(double s) const;

  /// Value on segment [grid[i], grid[i+1]] without the domain check.
  double interpolate_segment(std::size_t i, double s) const;

  /// Inverse of the interpolant on segment i for a level strictly between its
  /// end values.
  double invert_segment(std::size_t i, double level) const;

  /// Copy restricted to knots with index in [first, last].
  MonotoneFn slice(std::size_t first, std::size_t last) const;

  friend bool operator==(const MonotoneFn&, const MonotoneFn&) = default;

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
  Interp mode_;
};

double evaluate(const MonotoneFn& f, double s);

/// inf{ s >= s_0 : f(s) >= t }. Returns s_0 for t <= f(s_0); throws RangeError
/// when t exceeds the attained maximum. Flat runs resolve to their leftmost
/// point.
double left_inverse(const MonotoneFn& f, double t);

/// sup{ s >= s_0 : f(s) <= t }. Returns s_n for t >= f(s_n); throws RangeError
/// when t is below f(s_0). Flat runs resolve to their rightmost point.
double right_inverse(const MonotoneFn& f, double t);

/// Result of s -> f(s) / log(s / f(s)).
struct MLogResult {
  /// Transform restricted to the longest non-decreasing tail of its valid
  /// domain.
  MonotoneFn function;
  /// Knots where f(s) < s holds from here on (start of the valid domain).
  double valid_from = 0.0;
  /// Number of leading knots dropped because f(s) >= s.
  std::size_t excluded_points = 0;
  /// Whether the transform is non-decreasing on the whole valid domain.
  bool nondecreasing = false;
  /// Smallest knot from which the transform is non-decreasing.
  double monotone_from = 0.0;
  /// Last adjacent pair (s_i, s_{i+1}) on which the transform decreases.
  std::optional<std::pair<double, double>> last_decreasing_pair;
  std::vector<double> raw_grid;
  std::vector<double> raw_values;
};

MLogResult m_log_transform(const MonotoneFn& f);

struct MInfOptions {
  /// Coarse scan resolution in u = log(lambda), points per decade of u.
  int scan_per_decade = 48;
  /// Smallest scanned u relative to the largest admissible u.
  double scan_floor = 1e-8;
  /// Golden-section relative tolerance on u.
  double rel_tol = 1e-6;
};

struct MInfPoint {
  double value = 0.0;
  double minimizer = 0.0;  ///< lambda attaining the minimum
  double bracket_lo = 0.0; ///< lambda_1
  double bracket_hi = 0.0; ///< lambda_2
};

/// inf over lambda > 1 of f(lambda s) / log(lambda) at a single point, or
/// nullopt when the minimizing bracket does not fit inside the sampled domain.
std::optional<MInfPoint> try_m_inf_at(const MonotoneFn& f, double s, const MInfOptions& opt = {});

/// Like try_m_inf_at but throws DomainError naming the largest admissible s.
MInfPoint m_inf_at(const MonotoneFn& f, double s, const MInfOptions& opt = {});

/// Largest knot of f at which the minimizing bracket still fits, or nullopt.
std::optional<double> m_inf_max_admissible(const MonotoneFn& f, const MInfOptions& opt = {});

/// M_inf on f's own knots, up to the largest admissible one.
MonotoneFn m_inf_transform(const MonotoneFn& f, const MInfOptions& opt = {});

/// M_inf on the requested points (ascending); any inadmissible point throws.
MonotoneFn m_inf_transform(const MonotoneFn& f, std::span<const double> points,
                           const MInfOptions& opt = {});

}  // namespace semigrowth
