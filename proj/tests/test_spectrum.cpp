#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "semigrowth/errors.hpp"
#include "semigrowth/grid.hpp"
#include "semigrowth/spectrum.hpp"

using namespace semigrowth;
using doctest::Approx;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SpectralModel sqrt_lattice(double k_max = 1e10) { return SpectralModel::lattice(PowerProfile{0.5, 1.0}, k_max); }

std::vector<Complex> lattice_points(double (*g)(double), int k_max) {
  std::vector<Complex> pts;
  for (int k = 1; k <= k_max; ++k) {
    pts.emplace_back(-g(k), k);
    pts.emplace_back(-g(k), -k);
  }
  return pts;
}

}  // namespace

TEST_SUITE("spectrum") {
  TEST_CASE("model validation") {
    CHECK_THROWS_AS(SpectralModel::finite({}), DomainError);
    CHECK_THROWS_AS(SpectralModel::finite({Complex(0.0, 2.0)}, 1.0), ConfigError);
    CHECK_NOTHROW(SpectralModel::finite({Complex(0.0, 0.5)}, 1.0));
    CHECK_THROWS_AS(SpectralModel::lattice(PowerProfile{0.5, 1.0}, 0.5), ConfigError);
    CHECK_THROWS_AS(SpectralModel::lattice(PowerProfile{0.0, 1.0}, kInf), ConfigError);
    CHECK_THROWS_AS(SpectralModel::lattice(LogProfile{1.0}, 1e6, 0.5), ConfigError);
    CHECK_NOTHROW(SpectralModel::lattice(LogProfile{1.0}, 1e6, 2.0));
    const MonotoneFn sampled({1.0, 1e6}, {1.0, 2.0});
    CHECK_THROWS_AS(SpectralModel::lattice(sampled, kInf), ConfigError);
    CHECK(sqrt_lattice().sup_real() == -1.0);
  }

  TEST_CASE("distance to the imaginary axis") {
    CHECK(dist_to_imag(SpectralModel::finite({Complex(-1.0, 0.0)}), 0.0) == Approx(1.0));
    CHECK(dist_to_imag(SpectralModel::finite({Complex(-3.0, 4.0)}), 0.0) == Approx(5.0));
    CHECK(resolvent_norm_on_axis(SpectralModel::finite({Complex(-3.0, 4.0)}), 0.0) == Approx(0.2));
    const auto m = sqrt_lattice();
    const double d = dist_to_imag(m, 1e4);
    CHECK(d == Approx(100.0).epsilon(1e-3));
    CHECK(resolvent_norm_on_axis(m, 1e4) == Approx(1.0 / d));
    CHECK_THROWS_AS(resolvent_norm_on_axis(SpectralModel::finite({Complex(0.0, 0.5)}, 1.0), 0.5), SingularityError);
  }

  TEST_CASE("lattice distance agrees with brute force") {
    const auto m = sqrt_lattice(2000.0);
    const auto pts = lattice_points([](double k) { return std::sqrt(k); }, 2000);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-60.0, 10.0);
    for (int i = 0; i < 300; ++i) {
      const Complex lambda(u(rng), 2200.0 * (u(rng) + 60.0) / 70.0 - 100.0);
      const auto np = nearest_point(m, lambda);
      CHECK(np.distance == Approx(oracle::distance(pts, lambda)).epsilon(1e-12));
      CHECK(std::abs(np.point - lambda) == Approx(np.distance).epsilon(1e-12));
    }
  }

  TEST_CASE("distance is 1-Lipschitz along the axis") {
    const auto m = sqrt_lattice();
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
      const double a = gen::log_uniform(rng, 1.0, 1e9);
      const double b = a + gen::log_uniform(rng, 1e-3, 1e3);
      CHECK(std::abs(dist_to_imag(m, a) - dist_to_imag(m, b)) <= (b - a) * (1.0 + 1e-12));
    }
  }

  TEST_CASE("envelope of a single point") {
    const auto m = SpectralModel::finite({Complex(-1.0, 0.0)});
    CHECK(envelope_at(m, 2.0).value == Approx(std::sqrt(5.0)));
  }

  TEST_CASE("envelope of the square-root lattice") {
    const auto m = sqrt_lattice();
    const double v = envelope_at(m, 1e4).value;
    CHECK(v >= 99.0);
    CHECK(v <= 101.0);
    const auto M = resolvent_envelope(m, log_grid(10.0, 1e8, 8));
    CHECK(M(1e4) == Approx(v).epsilon(1e-12));
    const auto s = M.grid();
    const auto vals = M.values();
    for (std::size_t i = 1; i < s.size(); ++i) {
      CHECK(vals[i] >= vals[i - 1]);
      CHECK(vals[i] - vals[i - 1] <= (s[i] - s[i - 1]) * (1.0 + 1e-12));
    }
  }

  TEST_CASE("envelope of the log lattice") {
    const auto m = SpectralModel::lattice(LogProfile{1.0}, 1e10, 2.0);
    const double v = envelope_at(m, std::exp(10.0)).value;
    CHECK(v >= 9.5);
    CHECK(v <= 10.5);
  }

  TEST_CASE("envelope agrees with a dense eta scan on finite models") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> re(-50.0, -0.5), im(-400.0, 400.0);
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<Complex> pts;
      const int n = 50 + 100 * trial;
      for (int i = 0; i < n; ++i) pts.emplace_back(re(rng), im(rng));
      const auto m = SpectralModel::finite(pts);
      for (double s : {1.0, 37.0, 150.0, 390.0}) {
        const double ref = oracle::envelope_eta_scan(pts, s, 500.0, 4000);
        const double got = envelope_at(m, s).value;
        CHECK(got <= ref * (1.0 + 1e-6));
        CHECK(got >= ref - 500.0 / 4000.0);
      }
    }
  }

  TEST_CASE("envelope agrees with a dense scan on a truncated lattice") {
    const auto pts = lattice_points([](double k) { return std::sqrt(k); }, 1000);
    const auto m = sqrt_lattice(1000.0);
    for (double s : {10.0, 100.0, 600.0}) {
      const double ref = oracle::envelope_eta_scan(pts, s, 500.0, 5000);
      const double got = envelope_at(m, s).value;
      CHECK(got <= ref * (1.0 + 1e-6));
      CHECK(got >= ref - 0.1);
    }
  }

  TEST_CASE("envelope witness lies within the necessity window") {
    const auto m = sqrt_lattice();
    for (double s : log_grid(100.0, 1e8, 4)) {
      const auto e = envelope_at(m, s);
      CHECK(std::abs(e.witness.real()) <= e.value * (1.0 + 1e-12));
      CHECK(std::abs(e.witness) >= 0.99 * s);
    }
  }

  TEST_CASE("bounded spectra fail the divergence check") {
    std::vector<Complex> line;
    for (int k = -100000; k <= 100000; ++k) line.emplace_back(-1.0, k);
    CHECK_THROWS_AS(resolvent_envelope(SpectralModel::curve(line), log_grid(1.0, 1e3, 4)), ModelError);
    CHECK_THROWS_AS(resolvent_envelope(SpectralModel::lattice(LogProfile{1.0}, 1e6, 2.0), log_grid(1.0, 1e3, 4)),
                    DomainError);
  }

  TEST_CASE("semigroup derivative norm on finite models") {
    CHECK(semigroup_derivative_norm(SpectralModel::finite({Complex(-1.0, 0.0)}), 1.0) == Approx(std::exp(-1.0)));
    const auto m = SpectralModel::finite({Complex(-1.0, 2.0), Complex(-1.0, -2.0)});
    for (double t : {0.1, 0.5, 2.0}) {
      CHECK(semigroup_derivative_norm(m, t) == Approx(std::sqrt(5.0) * std::exp(-t)).epsilon(1e-14));
    }
    CHECK(semigroup_derivative_norm(m, 0.1) == Approx(2.0233).epsilon(1e-4));
  }

  TEST_CASE("semigroup derivative norm on the square-root lattice") {
    const double expected = 4e6 * std::exp(-2.0);
    CHECK(expected == Approx(5.413e5).epsilon(1e-3));
    const auto inf = semigroup_derivative_norm_detail(sqrt_lattice(kInf), 1e-3);
    CHECK(inf.value == Approx(expected).epsilon(0.02));
    CHECK(inf.certified);
    CHECK(inf.truncation_bound <= 1e-9 * inf.value);
    const double brute = oracle::lattice_norm([](double k) { return std::sqrt(k); }, 1e-3, 2e7);
    CHECK(inf.value == Approx(brute).epsilon(1e-9));
    const double cont = oracle::continuum_norm([](double k) { return std::sqrt(k); }, 1e-3, 1e12);
    CHECK(inf.value == Approx(cont).epsilon(1e-6));
  }

  TEST_CASE("truncated lattices report their tail bound") {
    const auto d = semigroup_derivative_norm_detail(sqrt_lattice(1e6), 1e-4);
    CHECK(d.value == Approx(oracle::lattice_norm([](double k) { return std::sqrt(k); }, 1e-4, 1e6)).epsilon(1e-9));
    CHECK(d.truncation_bound > d.value);
  }

  TEST_CASE("semigroup norm is monotone and dominates every point") {
    const auto pts = lattice_points([](double k) { return std::pow(k, 0.3); }, 500);
    const auto m = SpectralModel::finite(pts);
    double prev = kInf;
    for (double t : log_grid(1e-3, 10.0, 8)) {
      const double v = semigroup_derivative_norm(m, t);
      CHECK(v <= prev);
      prev = v;
      for (const auto& z : pts) CHECK(std::abs(z) * std::exp(t * z.real()) <= v * (1.0 + 1e-14));
    }
  }

  TEST_CASE("theta region") {
    ThetaParams p;
    p.p = 1.0;
    p.q = 1.0;
    p.omega = 1.0;
    p.resolvent_slope = 10.0;
    CHECK(theta_region_check(SpectralModel::finite({Complex(-1.0, 0.0)}), p).pass());

    const auto log_lattice = SpectralModel::lattice(LogProfile{1.0}, 1e6, 2.0);
    p.omega = 0.0;
    p.q = 2.0;
    const auto two = theta_region_check(log_lattice, p);
    CHECK_FALSE(two.region_clear);
    REQUIRE(two.spectral_point_in_region.has_value());
    CHECK(std::abs(two.spectral_point_in_region->imag()) == 1.0);
    p.q = 0.5;
    const auto half = theta_region_check(log_lattice, p);
    CHECK_FALSE(half.pass());
    CHECK_FALSE(half.region_clear);
    REQUIRE(half.spectral_point_in_region.has_value());
    const Complex z = *half.spectral_point_in_region;
    CHECK(p.p * std::exp(-p.q * z.real()) <= std::abs(z.imag()));

    p.q = 1.0;
    const auto sq = theta_region_check(sqrt_lattice(1e6), p);
    bool member = false;
    for (int k = 1; k <= 1000000 && !member; ++k) member = std::exp(std::sqrt(k)) <= k;
    CHECK(sq.region_clear == !member);
  }

  TEST_CASE("log-resolvent criterion") {
    const auto eta = log_grid(10.0, 1e8, 8);
    CHECK(log_resolvent_criterion(SpectralModel::finite({Complex(-1.0, 0.0)}), 0.0, eta).pass);
    CHECK(log_resolvent_criterion(sqrt_lattice(), 0.0, eta).pass);
    const auto lg = log_resolvent_criterion(SpectralModel::lattice(LogProfile{1.0}, 1e10, 2.0), 0.0,
                                            log_grid(10.0, 1e8, 8));
    CHECK_FALSE(lg.pass);
    CHECK(lg.values.back() == Approx(1.0).epsilon(0.1));
    CHECK_THROWS(log_resolvent_criterion(sqrt_lattice(), -2.0, eta));
  }

  TEST_CASE("liminf of the axis growth") {
    const auto eta = log_grid(10.0, 1e8, 8);
    CHECK(liminf_axis_growth(SpectralModel::finite({Complex(-1.0, 0.0)}), eta) == Approx(1.0).epsilon(1e-6));
    CHECK(liminf_axis_growth(sqrt_lattice(), eta) > 1e3);
    std::vector<Complex> line;
    for (int k = -200000; k <= 200000; ++k) line.emplace_back(-1.0, k);
    CHECK(liminf_axis_growth(SpectralModel::curve(line), log_grid(10.0, 1e5, 8)) > 5e3);
  }
}
