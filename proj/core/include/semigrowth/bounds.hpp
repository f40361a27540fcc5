#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semigrowth/asymp.hpp"
#include "semigrowth/increase.hpp"
#include "semigrowth/monotone.hpp"
#include "semigrowth/spectrum.hpp"
#include "semigrowth/verdict.hpp"

namespace semigrowth {

/// Samples of ||A T(t)|| on a strictly decreasing grid of positive t.
struct GrowthCurve {
  std::vector<double> t;
  std::vector<double> values;
  std::vector<double> truncation;  ///< certified bound on the part beyond the lattice truncation
  bool certified = true;
  std::string model_ref;
};

GrowthCurve growth_curve(const SpectralModel& model, std::span<const double> t_grid,
                         std::string model_ref = {});

/// Builds a curve from explicit samples (synthetic comparisons, tests).
GrowthCurve make_curve(std::vector<double> t, std::vector<double> values, std::string model_ref = {});

/// K(tau) = sup over 1 <= tau' <= tau of ||A T(1/tau')||, on tau = 1/t for t <= 1.
MonotoneFn k_function(const GrowthCurve& curve);

struct KEpsilon {
  std::optional<MonotoneFn> function;  ///< ||A T(1/tau)|| / (1 - eps) on its monotone tail
  double tail_start = 0.0;
  bool inconclusive = false;
};

KEpsilon k_epsilon(const GrowthCurve& curve, double epsilon);

enum class CheckId {
  banach_upper,
  hilbert_upper,
  lower_41b,
  resolvent_41a,
  sandwich_62,
  yosida_log,
  classical_cp,
  classical_eberhardt,
  holomorphic_classify,
};

std::string_view to_string(CheckId id);
std::optional<CheckId> parse_check_id(std::string_view name);
const std::vector<CheckId>& all_check_ids();

struct RatioRow {
  double x = 0.0;  ///< t or eta
  double lhs = 0.0;
  double envelope = 0.0;
  double ratio = 0.0;
};

struct BoundReport {
  CheckId id = CheckId::banach_upper;
  Verdict verdict = Verdict::inconclusive;
  std::optional<double> fitted_c;
  double fitted_C = 0.0;
  std::optional<double> threshold;  ///< t0 of the sandwich check
  std::string x_label = "t";
  std::vector<RatioRow> ratio_series;
  /// Decade-wise sups of the ratio, ordered toward the asymptotic end
  /// (t decreasing or eta increasing).
  std::vector<double> decade_sups;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::vector<std::string> notes;
};

std::vector<double> default_c_grid();

/// ||AT(t)|| against M_log^{-1}(1/(ct)); M must have positive increase, satisfy
/// M(s) = o(s) and make M/log(s/M) eventually non-decreasing.
BoundReport check_banach_upper(const GrowthCurve& curve, const MonotoneFn& M,
                               std::span<const double> c_grid, const AsympPolicy& policy = {});

/// ||AT(t)|| against M^{-1}(1/t); M must carry a positive-increase certificate.
BoundReport check_hilbert_upper(const GrowthCurve& curve, const MonotoneFn& M, const AsympPolicy& policy = {});

/// ||AT(t)|| against M^{-1}(1/(ct)) without any hypothesis gate.
BoundReport inverse_growth_bound(const GrowthCurve& curve, const MonotoneFn& M, double c,
                                 const AsympPolicy& policy = {});

/// M^{-1}(1/(ct)) against K(1/t); requires tau = O(K(tau)).
BoundReport check_lower_41b(const GrowthCurve& curve, const MonotoneFn& M, double c,
                            const AsympPolicy& policy = {});

/// ||R(i eta)|| K^{-1}(c |eta|) bounded for some c; requires tau = O(K(tau)).
BoundReport check_resolvent_41a(const SpectralModel& model, const MonotoneFn& K, std::span<const double> c_grid,
                                std::span<const double> eta_grid, const AsympPolicy& policy = {});

/// ||AT(t)|| / M_inf^{-1}(1/t) inside [1 - eps, 1 + eps] from a threshold t0 on.
BoundReport check_sandwich_62(const GrowthCurve& curve, const MonotoneFn& M, double epsilon,
                              const MInfOptions& opt = {});

enum class Regularity { holomorphic, polynomial_gevrey, exponential_yosida, other, inconclusive };

std::string_view to_string(Regularity r);

struct ClassifyOptions {
  std::vector<double> s_grid;    ///< resolvent envelope grid (empty: 10 .. 1e8)
  std::vector<double> eta_grid;  ///< axis probes (empty: same as s_grid)
  double slope_spread = 0.15;
  AsympPolicy policy;
};

struct Classification {
  Regularity regularity = Regularity::inconclusive;
  std::optional<double> alpha;        ///< from the log-log slope (polynomial regime)
  std::optional<double> gevrey_beta;  ///< Gevrey class for every beta above this
  bool semigroup_side = false;        ///< t ||AT(t)|| bounded
  bool resolvent_side = false;        ///< |eta| ||R(i eta)|| bounded
  std::vector<double> slopes;         ///< per-decade log-log slopes of ||AT(t)|| in 1/t
  BoundReport report;
};

Classification classify_regularity(const GrowthCurve& curve, const SpectralModel& model,
                                   const ClassifyOptions& opt = {});

/// Crandall-Pazy tau^{2/alpha - 1} and Eberhardt tau^{1/alpha + eps} on tau = 1/t.
std::pair<MonotoneFn, MonotoneFn> classical_envelopes(double alpha, std::span<const double> t_grid,
                                                      double eps = 0.05);

/// ||AT(t)|| against the classical envelope with the certificate's alpha.
BoundReport check_classical(const GrowthCurve& curve, const MonotoneFn& M, bool eberhardt,
                            const AsympPolicy& policy = {});

/// log|eta| ||R(i eta)|| bounded on the grid; the notes carry the
/// log-resolvent criterion at omega = max(0, sup Re sigma).
BoundReport check_yosida_log(const SpectralModel& model, std::span<const double> eta_grid,
                             const AsympPolicy& policy = {});

}  // namespace semigrowth
