#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "semigrowth/monotone.hpp"

namespace semigrowth {

enum class Relation { big_o, little_o, asymp_equiv, none };

std::string_view to_string(Relation r);

/// Operational reading of O / o / asymp on a finite window. The asymptotic
/// direction is x -> infinity; callers studying t -> 0 pass x = 1/t.
///
///  big-O:       decade-wise sup of f/g never grows by more than `slack`
///  little-o:    decade-wise sup of f/g shrinks by at least `decay` per decade
///  asymp-equiv: big-O in both directions
struct AsympPolicy {
  double slack = 0.10;
  double decay = 2.0;
  double min_decades = 2.0;
};

struct AsympReport {
  Relation relation = Relation::none;
  double fitted_constant = 0.0;  ///< sup of f/g over the upper half (log scale) of the window
  double window_lo = 0.0;
  double window_hi = 0.0;
  double worst_ratio = 0.0;      ///< sup of f/g over the whole window
  std::vector<double> decade_sups;
  bool f_big_o_g = false;
  bool g_big_o_f = false;
};

/// Splits the ascending abscissae into decades starting at x.front() and
/// returns the sup of `values` in each; a trailing partial decade is merged
/// into the previous one.
std::vector<double> decade_sups(std::span<const double> x, std::span<const double> values);
std::vector<double> decade_infs(std::span<const double> x, std::span<const double> values);

bool bounded_nonincreasing(std::span<const double> sups, double slack);
bool decays_per_decade(std::span<const double> sups, double factor);

/// Compares two sampled series on common ascending abscissae.
AsympReport asymp_compare_series(std::span<const double> x, std::span<const double> f,
                                 std::span<const double> g, const AsympPolicy& policy = {});

/// Compares two monotone functions on [lo, hi], sampled log-uniformly.
AsympReport asymp_compare(const MonotoneFn& f, const MonotoneFn& g, double lo, double hi,
                          const AsympPolicy& policy = {}, int per_decade = 16);

}  // namespace semigrowth
