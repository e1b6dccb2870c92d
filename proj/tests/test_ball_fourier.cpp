#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "maxdensity/ball_fourier.hpp"

using namespace maxdens;

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

// closed form for the 3-ball of radius 1
double phi3(double s) { return s == 0.0 ? 1.0 : 3.0 * (std::sin(s) - s * std::cos(s)) / (s * s * s); }

}  // namespace

TEST_CASE("unit volume radii") {
  CHECK(unit_volume_radius(1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(unit_volume_radius(2) == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-14));
  // solve (4/3) pi r^3 = 1 directly
  CHECK(unit_volume_radius(3) == doctest::Approx(std::cbrt(3.0 / (4.0 * kPi))).epsilon(1e-14));
}

TEST_CASE("ball law M values") {
  CHECK(BallLaw{2, unit_volume_radius(2)}.m_value() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(BallLaw{1, 0.5}.m_value() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::isinf(BallLaw{3, 0.0}.m_value()));
  BallLaw b = ball_with_m(3, 8.0);
  CHECK(b.radius == doctest::Approx(unit_volume_radius(3) / 2.0).epsilon(1e-13));
}

TEST_CASE("charfun: value 1 at zero, bounded by 1, interval oracle") {
  for (int d : {1, 2, 3, 4, 7}) {
    CHECK(ball_charfun(d, 1.3, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    for (double s = 0.25; s < 400.0; s *= 1.7)
      CHECK(std::abs(ball_charfun(d, 0.8, s)) <= 1.0 + 1e-12);
  }
  // d = 1, r = 1/2: phi(s) = sin(s/2)/(s/2), both evaluation regimes
  for (double s : {0.3, 1.0, 7.77, 40.0, 119.0, 150.0, 1000.0}) {
    double expect = sinc(0.5 * s);
    CHECK(ball_charfun(1, 0.5, s) == doctest::Approx(expect).epsilon(1e-8));
  }
}

TEST_CASE("charfun: 3-ball closed form across regimes") {
  for (double s : {0.1, 2.0, 11.0, 59.0, 61.0, 200.0, 900.0}) {
    CHECK(ball_charfun(3, 1.0, s) == doctest::Approx(phi3(s)).epsilon(1e-8));
  }
  // decay: tail well below 1e-3 at large argument
  CHECK(std::abs(ball_charfun(3, 1.0, 500.0)) < 1e-3);
  CHECK(std::abs(ball_charfun(2, 1.0, 2e4 / 1.0)) < 1e-3);
}

TEST_CASE("parseval: p = 2 integral reproduces M(Z)") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> rad(0.4, 1.6);
  for (int d : {1, 2, 3, 4}) {
    for (int trial = 0; trial < 3; ++trial) {
      double r = (trial == 0) ? unit_volume_radius(d) : rad(rng);
      double m = BallLaw{d, r}.m_value();
      IntegralResult got = charfun_pnorm_integral(d, r, 2.0);
      CHECK(got.value == doctest::Approx(m).epsilon(1e-6));
      CHECK(got.error_estimate < 1e-6 * m + 1e-12);
    }
  }
}

TEST_CASE("p-norm integral equality case at d = 2") {
  double r = unit_volume_radius(2);
  IntegralResult got = charfun_pnorm_integral(2, r, 2.0);
  CHECK(got.value == doctest::Approx(c_d(2) * 0.5).epsilon(1e-6));  // c(2) p^{-1} = 1
}

TEST_CASE("p-norm bound for d in 2..4 and the d = 1 interval constant") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> rad(0.5, 1.5);
  for (int d : {2, 3, 4}) {
    for (int p = 2; p <= 12; ++p) {
      for (int trial = 0; trial < 2; ++trial) {
        double r = trial == 0 ? unit_volume_radius(d) : rad(rng);
        double m = BallLaw{d, r}.m_value();
        double bound = m * c_d(d) * std::pow(static_cast<double>(p), -0.5 * d);
        IntegralResult got = charfun_pnorm_integral(d, r, p);
        CHECK(got.value <= bound * (1.0 + 1e-6));
      }
    }
  }
  // at d = 1 the sharp constant is sqrt(2), not c(1)
  for (int p = 2; p <= 12; ++p) {
    double r = 0.5;
    double bound = std::sqrt(2.0) * std::pow(static_cast<double>(p), -0.5);
    IntegralResult got = charfun_pnorm_integral(1, r, p);
    CHECK(got.value <= BallLaw{1, r}.m_value() * bound * (1.0 + 1e-6));
  }
}

TEST_CASE("p-norm integral rejects bad input") {
  CHECK_THROWS_AS(charfun_pnorm_integral(2, 1.0, 1.5), std::invalid_argument);
  QuadratureSpec tiny;
  tiny.nodes = 16;
  CHECK_THROWS_AS(charfun_pnorm_integral(2, 1.0, 2.0, tiny), std::invalid_argument);
}

TEST_CASE("p-norm integral flags a truncation too small to converge") {
  QuadratureSpec spec;
  spec.truncation_radius = 70.0;  // residual bound above tolerance at p = 2
  CHECK_THROWS_AS(charfun_pnorm_integral(2, 1.0, 2.0, spec), std::runtime_error);
  // a generous truncation converges and matches the default pipeline
  spec.truncation_radius = 4e4;
  double a = charfun_pnorm_integral(2, 1.0, 2.0, spec).value;
  double b = charfun_pnorm_integral(2, 1.0, 2.0).value;
  CHECK(a == doctest::Approx(b).epsilon(1e-8));
}

TEST_CASE("midpoint scheme agrees with the panel rule at lower accuracy") {
  QuadratureSpec mid;
  mid.scheme = QuadScheme::midpoint;
  mid.nodes = 8192;
  double r = unit_volume_radius(3);
  double a = charfun_pnorm_integral(3, r, 4.0, mid).value;
  double b = charfun_pnorm_integral(3, r, 4.0).value;
  CHECK(a == doctest::Approx(b).epsilon(1e-4));
}

TEST_CASE("sum of balls: single summand handled without quadrature") {
  IntegralResult got = density_at_zero_sum_balls(2, {1.0}, {unit_volume_radius(2)});
  CHECK(got.value == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(got.error_estimate == 0.0);
}

TEST_CASE("sum of balls: the two-interval extremal slice") {
  double r = unit_volume_radius(1);
  double inv = 1.0 / std::sqrt(2.0);
  IntegralResult got = density_at_zero_sum_balls(1, {inv, inv}, {r, r});
  CHECK(got.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("sum of balls: dirac factors drop out") {
  double r = unit_volume_radius(1);
  double inv = 1.0 / std::sqrt(2.0);
  // one Dirac summand: remaining single interval scaled by 1/sqrt(2)
  IntegralResult got = density_at_zero_sum_balls(1, {inv, inv}, {r, 0.0});
  CHECK(got.value == doctest::Approx(1.0 / (2.0 * r * inv)).epsilon(1e-12));
  IntegralResult all_dirac = density_at_zero_sum_balls(1, {inv, inv}, {0.0, 0.0});
  CHECK(std::isinf(all_dirac.value));
}

TEST_CASE("sum of balls: unequal frequencies and slow beats stay accurate") {
  // d = 1 oracle: M(theta1 U1 + theta2 U2) for intervals is the overlap formula
  // f(0) of the convolution of uniform[-a,a] and uniform[-b,b]: 1/(2 max(a,b))
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> unif(0.2, 0.95);
  for (int trial = 0; trial < 25; ++trial) {
    double t1 = unif(rng);
    double t2 = std::sqrt(1.0 - t1 * t1);
    std::uniform_real_distribution<double> rad(0.3, 1.4);
    double r1 = rad(rng), r2 = rad(rng);
    double a = t1 * r1, b = t2 * r2;
    double expect = 1.0 / (2.0 * std::max(a, b));
    IntegralResult got = density_at_zero_sum_balls(1, {t1, t2}, {r1, r2});
    CHECK(got.value == doctest::Approx(expect).epsilon(2e-4));
  }
  // nearly equal frequencies: beat period much longer than the cutoff
  double r = 0.7;
  IntegralResult beat =
      density_at_zero_sum_balls(1, {std::sqrt(0.5 - 1e-7), std::sqrt(0.5 + 1e-7)}, {r, r});
  CHECK(beat.value == doctest::Approx(1.0 / (2.0 * std::sqrt(0.5 + 1e-7) * r)).epsilon(1e-4));
}

TEST_CASE("sum of balls: scaling covariance in the radii") {
  for (int d : {1, 2, 3}) {
    std::vector<double> theta{0.6, 0.8};
    std::vector<double> radii{0.9, 1.2};
    std::vector<double> doubled{1.8, 2.4};
    double v1 = density_at_zero_sum_balls(d, theta, radii).value;
    double v2 = density_at_zero_sum_balls(d, theta, doubled).value;
    CHECK(v2 == doctest::Approx(v1 * std::pow(2.0, -d)).epsilon(1e-5));
  }
}

TEST_CASE("sum of balls: iid slices stay below c(d) and converge to it") {
  for (int d : {2, 3}) {
    double r = unit_volume_radius(d);
    double last = 0.0;
    for (int n : {2, 4, 8, 16, 50, 100}) {
      std::vector<double> theta(n, 1.0 / std::sqrt(static_cast<double>(n)));
      std::vector<double> radii(n, r);
      last = density_at_zero_sum_balls(d, theta, radii).value;
      CHECK(last <= c_d(d) + 1e-3);
    }
    CHECK(last == doctest::Approx(c_d(d)).epsilon(0.05));
  }
  // n = 2 at d = 2: the overlap integral is the whole ball, value exactly c(2)
  double r2 = unit_volume_radius(2);
  double inv = 1.0 / std::sqrt(2.0);
  CHECK(density_at_zero_sum_balls(2, {inv, inv}, {r2, r2}).value ==
        doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("sum of balls rejects non-unit directions") {
  CHECK_THROWS_AS(density_at_zero_sum_balls(1, {0.7071, 0.7071}, {0.5, 0.5}),
                  std::invalid_argument);
}

TEST_CASE("slicing constant closed forms") {
  CHECK(c_d(2) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(c_d(1) == doctest::Approx(std::sqrt(6.0 / kPi)).epsilon(1e-14));  // 1.38198
}

TEST_CASE("c(d,k) for projections") {
  SlicingConstants b = c_constants(1, 1, 2);
  CHECK(b.c1 == doctest::Approx(std::sqrt(2.0)));
  CHECK(b.c2 == doctest::Approx(std::sqrt(2.0)));
  CHECK(b.c == doctest::Approx(std::sqrt(2.0)));

  SlicingConstants d2 = c_constants(2, 1, 2);
  CHECK(d2.c1 == doctest::Approx(2.0));
  CHECK(d2.c2 == doctest::Approx(2.0));
  CHECK(d2.c == doctest::Approx(2.0));

  SlicingConstants wide = c_constants(1, 2, 10);
  CHECK(wide.c1 == doctest::Approx(2.0));
  CHECK(wide.c2 == doctest::Approx(2.44140625));
  CHECK(wide.c == doctest::Approx(2.0));

  CHECK(c_constants(3, 4, 4).c == doctest::Approx(1.0));
  CHECK_THROWS_AS(c_constants(2, 5, 4), std::invalid_argument);
}

TEST_CASE("entropy power constant") {
  CHECK(epi_constant(2) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(epi_constant(1) == doctest::Approx(kPi / 6.0).epsilon(1e-14));
  double prev = epi_constant(1);
  for (int d = 2; d <= 200; ++d) {
    double cur = epi_constant(d);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK(prev > 1.0 / std::numbers::e);
}

TEST_CASE("epi power bound matches the transformed slicing constant") {
  CHECK(epi_power_bound(2, 1, 2) == doctest::Approx(0.5));
  CHECK(epi_power_bound(3, 5, 5) == doctest::Approx(1.0));  // empty kernel
  for (int d = 1; d <= 10; ++d)
    for (int n = 2; n <= 10; ++n)
      for (int k = 1; k < n; ++k) {
        double via_c = std::pow(c_constants(d, k, n).c, -2.0 / (d * k));
        CHECK(epi_power_bound(d, k, n) == doctest::Approx(via_c).epsilon(1e-12));
      }
}
