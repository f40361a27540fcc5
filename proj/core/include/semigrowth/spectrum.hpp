#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "semigrowth/asymp.hpp"
#include "semigrowth/monotone.hpp"

namespace semigrowth {

using Complex = std::complex<double>;

/// g(k) = scale * k^exponent
struct PowerProfile {
  double exponent = 0.5;
  double scale = 1.0;
  friend bool operator==(const PowerProfile&, const PowerProfile&) = default;
};

/// g(k) = scale * log(k); vanishes at k = 1, so z_{+-1} sit on the imaginary axis.
struct LogProfile {
  double scale = 1.0;
  friend bool operator==(const LogProfile&, const LogProfile&) = default;
};

/// Real-part profile of a lattice family: non-negative and non-decreasing in k.
using Profile = std::variant<PowerProfile, LogProfile, MonotoneFn>;

double profile_value(const Profile& g, double k);
/// Largest k at which the profile is defined (infinite for closed forms).
double profile_limit(const Profile& g);
/// Whether g(k) -> infinity as k -> infinity.
bool profile_unbounded(const Profile& g);

struct FinitePoints {
  std::vector<Complex> points;
};

/// Points z_k = -g(|k|) + i k for 1 <= |k| <= k_max.
struct LatticeFamily {
  Profile profile;
  double k_max = 1e10;
};

/// Samples of a spectral curve, sorted by imaginary part.
struct SampledCurve {
  std::vector<Complex> points;
};

class SpectralModel;

struct UnionModel {
  std::vector<SpectralModel> members;
};

/// Explicit spectrum of a quasi-multiplication semigroup. Immutable after
/// construction; `imag_bound()` is b with sigma(A) on iR inside (-ib, ib).
class SpectralModel {
 public:
  using Variant = std::variant<FinitePoints, LatticeFamily, SampledCurve, UnionModel>;

  static SpectralModel finite(std::vector<Complex> points, double imag_bound = 0.0);
  static SpectralModel lattice(Profile profile, double k_max = 1e10, double imag_bound = 0.0);
  static SpectralModel curve(std::vector<Complex> points, double imag_bound = 0.0);
  static SpectralModel union_of(std::vector<SpectralModel> members, double imag_bound = 0.0);

  const Variant& variant() const { return v_; }
  double imag_bound() const { return b_; }
  double sup_real() const { return sup_re_; }
  bool is_lattice() const { return std::holds_alternative<LatticeFamily>(v_); }

  /// Explicit points for non-lattice models (lattice families are never
  /// enumerated). Intended for CSV dumps and brute-force oracles.
  std::vector<Complex> points(double lattice_limit = 1e4) const;

 private:
  SpectralModel(Variant v, double b);
  void validate();

  Variant v_;
  double b_ = 0.0;
  double sup_re_ = -std::numeric_limits<double>::infinity();
};

struct NearestPoint {
  double distance = 0.0;
  Complex point;
};

/// Distance from lambda to the model and a point attaining it.
NearestPoint nearest_point(const SpectralModel& model, Complex lambda);
double dist(const SpectralModel& model, Complex lambda);

double dist_to_imag(const SpectralModel& model, double eta);

/// 1 / dist(i eta, sigma(A)); throws SingularityError when i eta is a spectral point.
double resolvent_norm_on_axis(const SpectralModel& model, double eta);

struct EnvelopePoint {
  double value = 0.0;
  Complex witness;  ///< spectral point realizing inf_{|eta| >= s} dist(i eta, z)
};

/// inf over |eta| >= s of dist(i eta, sigma(A)), with the attaining point.
EnvelopePoint envelope_at(const SpectralModel& model, double s);

/// M(s) = 1 / sup_{|eta| >= s} ||R(i eta, A)|| on `s_grid`. Throws ModelError
/// unless the envelope at least doubles across the grid.
MonotoneFn resolvent_envelope(const SpectralModel& model, std::span<const double> s_grid);

struct SemigroupNorm {
  double value = 0.0;            ///< sup |z| e^{t Re z} over the (truncated) model
  Complex maximizer;
  /// Certified bound on sup |z| e^{t Re z} over lattice points beyond k_max
  /// (0 for finite models, +inf when the tail cannot be bounded).
  double truncation_bound = 0.0;
  bool certified = true;
};

SemigroupNorm semigroup_derivative_norm_detail(const SpectralModel& model, double t);
double semigroup_derivative_norm(const SpectralModel& model, double t);

struct ThetaParams {
  double p = 1.0;
  double q = 1.0;
  double omega = 0.0;
  double resolvent_slope = 1.0;  ///< C in ||R(lambda, A)|| <= C |Im lambda|
  double probe_decades = 8.0;
  int probes_per_decade = 64;
  int offsets = 16;
};

struct ThetaVerdict {
  bool region_clear = true;      ///< no model point in Theta with Re <= omega
  bool resolvent_ok = true;      ///< 1/dist <= C |Im| on every probe
  std::optional<Complex> spectral_point_in_region;
  std::optional<Complex> first_violating_probe;
  std::size_t probes = 0;
  bool pass() const { return region_clear && resolvent_ok; }
};

ThetaVerdict theta_region_check(const SpectralModel& model, const ThetaParams& params);

struct LogResolventReport {
  AsympReport asymp;
  std::vector<double> eta;
  std::vector<double> values;  ///< log|eta| / dist(omega + i eta, sigma(A))
  bool pass = false;           ///< decade-wise max decreasing toward zero
};

LogResolventReport log_resolvent_criterion(const SpectralModel& model, double omega,
                                           std::span<const double> eta_grid);

/// min over the grid's upper decade of |eta| / dist(i eta, sigma(A)).
double liminf_axis_growth(const SpectralModel& model, std::span<const double> eta_grid);

}  // namespace semigrowth
