#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semigrowth/monotone.hpp"
#include "semigrowth/spectrum.hpp"
#include "semigrowth/verdict.hpp"

namespace semigrowth {

/// f(lambda s) / f(s) >= c0 lambda^alpha for lambda >= 1, s >= s0.
struct PositiveIncreaseCert {
  double alpha = 0.0;
  double c0 = 0.0;
  double s0 = 0.0;
};

/// Default candidate exponents: 1.00, 0.99, ..., 0.01.
std::vector<double> default_alpha_grid();

struct CertificateOptions {
  std::vector<double> alpha_grid = default_alpha_grid();
  /// Extra log-uniform abscissae added to the knots.
  int s_samples = 256;
  /// Extra points per decade in linear interpolation mode, where the knots
  /// alone do not attain the infimum.
  int lambda_samples = 64;
  double c_floor = 1e-3;
  /// Maximum relative loss of c(alpha) when the lambda range grows by a decade.
  double drift_tolerance = 0.01;
};

/// inf over sampled s0 <= s <= lambda s <= end of f(lambda s) / (f(s) lambda^alpha).
/// `max_span` limits lambda.
double increase_constant(const MonotoneFn& f, double alpha, double s0, const CertificateOptions& opt = {},
                         double max_span = std::numeric_limits<double>::infinity());

/// Intercept a of the least-squares fit e_j ~ a + b / log(s_j) to the decade
/// elasticities of f on [s0, end]; the limit elasticity as s -> infinity.
double limit_elasticity(const MonotoneFn& f, double s0);

/// Largest alpha on the grid that certifies: c(alpha) above the floor, stable
/// as lambda ranges over more decades, and not above the limit elasticity.
std::optional<PositiveIncreaseCert> find_certificate(const MonotoneFn& f,
                                                     const CertificateOptions& opt = {});

struct CertificateCheck {
  bool pass = false;
  double worst_ratio = 0.0;
  double worst_s = 0.0;
  double worst_lambda = 0.0;
  std::size_t probes = 0;
};

CertificateCheck verify_certificate(const MonotoneFn& f, const PositiveIncreaseCert& cert,
                                    std::size_t probes = 4096, std::uint64_t seed = 1);

/// Largest c1 with f(s) >= c1 s^alpha on the knots >= s0 (and at s0).
double polynomial_floor_check(const MonotoneFn& f, const PositiveIncreaseCert& cert);

struct IntegralCheck {
  double integral = 0.0;    ///< int_{s0}^{end} s / f(s)^gamma ds
  double tail_bound = 0.0;  ///< bound on the integral beyond the domain end
  double lhs = 0.0;
  double rhs = 0.0;         ///< s0^2 / ((alpha gamma - 2) c0^gamma f(s0)^gamma)
  bool pass = false;
};

IntegralCheck integral_estimate_check(const MonotoneFn& f, const PositiveIncreaseCert& cert,
                                      double gamma);

struct ConditionReport {
  struct C1 {
    bool pass = false;
    std::optional<PositiveIncreaseCert> certificate;
  } c1;
  struct C2 {
    bool pass = false;
    std::optional<double> s_tilde;  ///< f(s) < s from here on
    std::vector<double> decade_sups;  ///< of f(s)/s beyond s_tilde
  } c2;
  struct C3 {
    bool pass = false;
    std::optional<double> s1;  ///< transform non-decreasing from here on
    std::optional<std::pair<double, double>> last_decreasing_pair;
  } c3;
  bool pass() const { return c1.pass && c2.pass && c3.pass; }
};

ConditionReport check_c_conditions(const MonotoneFn& f, const CertificateOptions& opt = {});

enum class Prop33Variant { i, ii };

struct Prop33Result {
  bool pass = false;
  Prop33Variant variant = Prop33Variant::ii;
  double alpha = 0.0;  ///< variant ii
  double gamma = 0.0;  ///< variant i
  double delta = 0.0;  ///< variant i
  double s1 = 0.0;
  /// m_log_transform(f) strictly increasing on the knots beyond s1.
  bool m_log_increasing = false;
  std::string note;
};

Prop33Result prop33_check(const MonotoneFn& f, Prop33Variant variant);

struct NecessityResult {
  Verdict verdict = Verdict::inconclusive;
  bool chains_hold = false;
  std::optional<double> violating_s;
  std::optional<PositiveIncreaseCert> certificate;
  std::string note;
};

/// Checks delta N <= f <= N and f <= delta epsilon s on f's knots, where N is
/// the spectral envelope of `model`; when both hold (and the optional growth
/// verdict is not negative), searches a positive-increase certificate.
NecessityResult necessity_sandwich_check(const SpectralModel& model, const MonotoneFn& f, double delta,
                                         double epsilon, std::optional<bool> growth_bound_holds = {},
                                         const CertificateOptions& opt = {});

}  // namespace semigrowth
