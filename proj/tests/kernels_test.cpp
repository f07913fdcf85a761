#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hyplab/kernels.hpp"
#include "hyplab/specfun.hpp"
#include "support.hpp"

using namespace hyplab;
using hyplab::testing::rel_err;
using std::numbers::pi;

namespace {

double ball_area(double r) { return 4.0 * pi * std::sinh(r / 2.0) * std::sinh(r / 2.0); }
double ball_u(double r) { return (std::cosh(r) - 1.0) / 2.0; }

// sqrt(2 pi sinh R) (g(t) + g(-t)) with g(t) = e^{itR} Gamma(it)/Gamma(3/2+it) F(-1/2, 3/2; 1-it; 1/(1-e^{2R})).
// For real t this is 2 sqrt(2 pi sinh R) Re g(t); the symmetric form continues analytically to t = i/2.
cplx gamma_ratio_transform(double R, cplx t) {
  const cplx i(0.0, 1.0);
  const cplx z = 1.0 / (1.0 - std::exp(2.0 * R));
  auto g = [&](cplx tt) {
    return std::exp(i * tt * R) * cgamma(i * tt) / cgamma(1.5 + i * tt) * hyp2f1_series(-0.5, 1.5, 1.0 - i * tt, z);
  };
  return std::sqrt(2.0 * pi * std::sinh(R)) * (g(t) + g(-t));
}

}  // namespace

TEST_CASE("kernel specs") {
  const auto b = KernelSpec::ball(1.5);
  CHECK(b.kind() == KernelSpec::Kind::Ball);
  CHECK(b.outer_radius() == 1.5);
  CHECK(b.support_radius() == 1.5);
  const auto p = KernelSpec::smoothed(4.0, 0.1, Sign::Plus);
  CHECK(p.outer_radius() == doctest::Approx(4.1));
  CHECK(p.support_radius() == doctest::Approx(4.2));
  const auto m = KernelSpec::smoothed(4.0, 0.1, Sign::Minus);
  CHECK(m.outer_radius() == doctest::Approx(3.9));
  CHECK(m.support_radius() == doctest::Approx(4.0));
  CHECK(KernelSpec::smoothed_from_count(1000.0, 0.01, Sign::Plus).Y() == doctest::Approx(std::acosh(500.0)));
  CHECK(radius_from_count(10.0) == doctest::Approx(std::acosh(5.0)));
  CHECK_THROWS_AS(KernelSpec::ball(0.0), DomainError);
  CHECK_THROWS_AS(KernelSpec::smoothed(1.0, 1.0, Sign::Plus), DomainError);
  CHECK_THROWS_AS(KernelSpec::smoothed(1.0, -0.1, Sign::Plus), DomainError);
  CHECK_THROWS_AS(radius_from_count(2.0), DomainError);
}

TEST_CASE("lens area") {
  CHECK(lens_area(0.0, 2.0, 0.5) == doctest::Approx(ball_area(0.5)).epsilon(1e-12));
  CHECK(lens_area(0.3, 2.0, 0.5) == doctest::Approx(ball_area(0.5)).epsilon(1e-12));
  CHECK(lens_area(3.0, 2.0, 0.5) == 0.0);
  for (double d : {0.2, 1.0, 1.7, 2.3, 2.45}) {
    const double a = lens_area(d, 2.0, 0.5);
    CHECK(a == doctest::Approx(lens_area(d, 0.5, 2.0)).epsilon(1e-10));
    CHECK(a <= ball_area(0.5) * (1.0 + 1e-12));
    CHECK(a >= 0.0);
  }
  double prev = ball_area(0.5);
  for (double d = 1.5; d <= 2.5; d += 0.05) {
    const double a = lens_area(d, 2.0, 0.5);
    CHECK(a <= prev + 1e-12);
    prev = a;
  }
  // Two unit balls at distance 1 in the small-radius (Euclidean) limit: 2 r^2 acos(d/2r) - (d/2) sqrt(4r^2 - d^2).
  const double r = 1e-3, d = 1e-3;
  const double flat = 2.0 * r * r * std::acos(d / (2.0 * r)) - d / 2.0 * std::sqrt(4.0 * r * r - d * d);
  CHECK(lens_area(d, r, r) == doctest::Approx(flat).epsilon(1e-5));
}

TEST_CASE("kernel evaluation") {
  const auto b = KernelSpec::ball(1.0);
  CHECK(kernel_eval(b, 0.0) == 1.0);
  CHECK(kernel_eval(b, ball_u(1.0)) == 1.0);
  CHECK(kernel_eval(b, std::nextafter(ball_u(1.0), 1.0)) == 0.0);
  CHECK_THROWS_AS(kernel_eval(b, -0.1), DomainError);

  const double Y = 3.0, delta = 0.2;
  const auto minus = KernelSpec::smoothed(Y, delta, Sign::Minus);
  const auto plus = KernelSpec::smoothed(Y, delta, Sign::Plus);
  CHECK(kernel_eval(minus, ball_u(Y - 2.0 * delta)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(kernel_eval(minus, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(kernel_eval(plus, ball_u(Y + 2.0 * delta)) == doctest::Approx(0.0));
  CHECK(kernel_eval(plus, ball_u(Y + 2.5 * delta)) == 0.0);
  double prev = 1.0;
  for (double r = 0.0; r < Y + 0.5; r += 0.01) {
    const double v = kernel_eval(plus, ball_u(r));
    CHECK(v >= -1e-12);
    CHECK(v <= 1.0 + 1e-12);
    CHECK(v <= prev + 1e-9);
    prev = v;
  }
  // At the outer radius the small ball is half inside, up to curvature.
  CHECK(kernel_eval(plus, ball_u(Y + delta)) == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("sandwich inequality") {
  CHECK(sandwich_check(1000.0, 0.01, sandwich_grid(1000.0, 0.01, 1000)).ok);
  CHECK(sandwich_check(10.0, 0.5, sandwich_grid(10.0, 0.5, 400)).ok);
  const double Y = radius_from_count(1000.0);
  const auto grid = sandwich_grid(1000.0, 0.01, 1000);
  const auto broken = sandwich_check(1000.0, 0.01, grid, Y - 0.01, Y - 0.01);
  CHECK_FALSE(broken.ok);
  CHECK(broken.violations > 0);
  CHECK(broken.worst_upper > 0.0);
  const auto report = sandwich_check(50.0, 0.2, sandwich_grid(50.0, 0.2, 300));
  CHECK(report.ok);
  CHECK(report.checked >= 300);
  CHECK(report.worst_lower <= 1e-10);
  CHECK(report.worst_upper <= 1e-10);
}

TEST_CASE("ball transform at the trivial eigenvalue") {
  for (double R = 0.5; R <= 10.0; R += 0.5) {
    const double want = 2.0 * pi * (std::cosh(R) - 1.0);
    CHECK(rel_err(sht_ball(R, {0.0, 0.5}), want) < 1e-10);
    CHECK(rel_err(gamma_ratio_transform(R, {0.0, 0.5}), want) < 1e-10);
  }
  CHECK(rel_err(sht_ball(3.0, {0.0, 0.5}), 2.0 * pi * (std::cosh(3.0) - 1.0)) < 1e-14);
}

TEST_CASE("ball transform matches the gamma ratio formula") {
  for (double R : {0.5, 1.0, 2.0, 3.0, 5.0, 8.0}) {
    for (double t : {0.3, 1.0, 3.0, 10.0, 25.0}) {
      const cplx h = sht_ball(R, t);
      CHECK(h.imag() == 0.0);
      const double scale = 2.0 * pi * (std::cosh(R) - 1.0) / std::max(1.0, t * t);
      CHECK(std::abs(h.real() - gamma_ratio_transform(R, t).real()) < 1e-10 * scale);
    }
  }
  // Frozen high-precision values of the transform.
  CHECK(rel_err(sht_ball(0.05, 10.0), 2.0 * 0.00380603641337982388) < 1e-10);
  CHECK(rel_err(sht_ball(3.0, 1.0), 2.0 * 3.98532412137920428) < 1e-12);
  CHECK(rel_err(sht_ball(5.0, 1.0), 2.0 * -19.0828017906869136) < 1e-12);
  CHECK(rel_err(sht_ball(2.0, 3.0), 2.0 * -0.733444986906301172) < 1e-12);
  CHECK(rel_err(sht_ball(0.5, 20.0), 2.0 * 0.00342288494974331661) < 1e-10);
  CHECK(rel_err(sht_ball(0.01, 100.0), 2.0 * 0.000138246669563914335) < 1e-10);
  CHECK_THROWS_AS(sht_ball(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(sht_ball(1.0, {0.3, 0.2}), DomainError);
  CHECK_THROWS_AS(sht_ball(-1.0, 1.0), DomainError);
  CHECK(sht_ball(2.0, -3.0) == sht_ball(2.0, 3.0));
}

TEST_CASE("ball transform envelopes") {
  double uniform = 0.0;
  for (double R : {0.5, 1.0, 2.0, 5.0, 8.0, 10.0}) {
    for (double t : {0.5, 1.0, 2.0, 5.0, 20.0, 50.0}) {
      uniform = std::max(uniform, std::abs(sht_ball(R, t).real()) / ((R + 1.0) * std::exp(R / 2.0)));
    }
  }
  CHECK(uniform <= 10.0);
  CHECK(std::abs(sht_ball(5.0, 1.0).real()) <= 10.0 * 6.0 * std::exp(2.5));

  double small = 0.0;
  for (double R : {0.01, 0.02, 0.05, 0.1, 0.2, 0.5}) {
    for (double t : {1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0}) {
      const double bessel = pi * R * R * bessel_j1_ratio(R * t) * std::sqrt(std::sinh(R) / R);
      small = std::max(small, std::abs(sht_ball(R, t).real() - bessel) / (R * R * std::min(R * R, 1.0 / (t * t))));
    }
  }
  CHECK(small <= 10.0);

  double factor = 0.0;
  for (double R : {0.5, 1.0, 2.0, 3.0, 5.0, 8.0}) {
    for (double t : {0.5, 1.0, 2.0, 5.0, 20.0, 50.0}) {
      const cplx F = hyp2f1_series(-0.5, 1.5, cplx(1.0, -t), 1.0 / (1.0 - std::exp(2.0 * R)));
      factor = std::max(factor, std::abs(F - 1.0) / (std::exp(-2.0 * R) * std::min(1.0, 1.0 / t)));
    }
  }
  CHECK(factor <= 10.0);
}

TEST_CASE("smoothed transform") {
  const double X = 1000.0, Y = radius_from_count(X);
  for (double delta : {0.01, 0.1}) {
    for (Sign sign : {Sign::Plus, Sign::Minus}) {
      const double sg = static_cast<double>(static_cast<int>(sign));
      const cplx at_half = sht_smoothed(Y, delta, sign, {0.0, 0.5});
      CHECK(rel_err(at_half, 2.0 * pi * (std::cosh(Y + sg * delta) - 1.0)) < 1e-12);
      // 2 pi (cosh(Y +- d) - 1) - pi X = +-pi X sinh(d) tanh(Y) + pi X (cosh d - 1) - 2 pi.
      CHECK(std::abs(at_half.real() - pi * X) <= pi * (2.0 + delta * X * (1.0 + delta)));
      for (double t : {0.5, 3.0, 20.0}) {
        const cplx prod = sht_ball(Y + sg * delta, t) * sht_ball(delta, t) / ball_area(delta);
        CHECK(rel_err(sht_smoothed(Y, delta, sign, t), prod) < 1e-14);
      }
    }
    const double at20 = std::abs(sht_smoothed(Y, delta, Sign::Plus, 20.0).real());
    CHECK(at20 <= 100.0 * std::sqrt(X) * std::pow(20.0, -1.5) * std::min(1.0, std::pow(delta * 20.0, -1.5)));
    CHECK(std::abs(sht_smoothed(Y, delta, Sign::Plus, 0.5).real()) <= std::sqrt(X) * std::log(X));
  }
  const auto spec = KernelSpec::smoothed(Y, 0.1, Sign::Minus);
  CHECK(sht(spec, 2.0) == sht_smoothed(Y, 0.1, Sign::Minus, 2.0));
  CHECK(sht(KernelSpec::ball(2.0), 2.0) == sht_ball(2.0, 2.0));
}

TEST_CASE("spherical functions") {
  for (int n : {1, 2, -1}) CHECK(spherical_p({n, 0, {0.5, 3.0}, 0.0}) == cplx(0.0));
  CHECK(spherical_p({0, 0, {0.5, 3.0}, 0.0}) == cplx(1.0));
  CHECK(spherical_p({0, 2, {0.7, 1.0}, 0.0}) == cplx(1.0));
  CHECK(std::abs(spherical_p({0, 0, {0.5, 40.0}, 0.5}).real() - 0.163642395701185596) < 1e-13);
  CHECK(std::abs(spherical_p({0, 0, {0.5, 40.0}, 1.0}).real() - 0.00690933603466309029) < 1e-13);
  CHECK(std::abs(spherical_p({0, 0, {0.5, 40.0}, 2.0}).real() + 0.0518595293114322049) < 1e-13);
  CHECK(std::abs(spherical_p({0, 0, {0.5, 3.0}, 2.5}).real() - 0.173256822784530064) < 1e-13);
  // P_{-s}(cosh r) at s = 0 and s = 1 is identically one.
  CHECK(std::abs(spherical_p({0, 0, 1.0, 3.7}) - 1.0) < 1e-12);
  CHECK(std::abs(spherical_p({0, 0, 0.0, 3.7}) - 1.0) < 1e-12);

  for (double r : {0.5, 1.0, 2.0}) {
    const double p = spherical_p({0, 0, {0.5, 40.0}, r}).real();
    CHECK(std::abs(p - spherical_asymptotic(40.0, r)) <= 5.0 / 40.0);
  }

  // Series form at small r against the integral form.
  const double r = 1.0;
  const double v = std::cosh(r);
  const cplx s(0.5, 3.0);
  const cplx series = std::pow(2.0 / (1.0 + v), s) * gauss_2f1(s, s, 1.0, (v - 1.0) / (v + 1.0));
  CHECK(rel_err(spherical_p({0, 0, s, r}), series) < 1e-12);

  const cplx s1(0.5, 2.0);
  const double th = std::tanh(0.4);
  const cplx p1 = spherical_p({1, 0, s1, 0.8});
  CHECK(rel_err(p1, th * std::pow(2.0 / (1.0 + std::cosh(0.8)), s1) * gauss_2f1(s1, s1 + 1.0, 2.0, th * th)) < 1e-13);
  CHECK_THROWS_AS(spherical_p({1, 0, s1, 3.0}), DomainError);
  CHECK_THROWS_AS(spherical_p({0, 0, s1, -1.0}), DomainError);
}

TEST_CASE("numeric transform agrees with the closed forms") {
  const auto b2 = KernelSpec::ball(2.0);
  CHECK(rel_err(sht_numeric(b2, {0.0, 0.5}), 2.0 * pi * (std::cosh(2.0) - 1.0)) < 1e-10);
  CHECK(rel_err(sht_numeric(b2, 3.0), sht_ball(2.0, 3.0)) < 1e-6);
  CHECK(std::abs(sht_numeric(KernelSpec::ball(5.0), 20.0).real() + 0.464772026562157) < 1e-9);

  for (double R : {0.5, 1.5, 3.0}) {
    for (double t : {1.0, 7.0, 15.0}) {
      CHECK(rel_err(sht_numeric(KernelSpec::ball(R), t), sht_ball(R, t)) < 1e-6);
    }
  }

  for (Sign sign : {Sign::Plus, Sign::Minus}) {
    for (double t : {1.0, 3.0}) {
      const double Y = 2.5, delta = 0.3;
      const cplx num = sht_numeric(KernelSpec::smoothed(Y, delta, sign), t);
      const cplx closed = sht_smoothed(Y, delta, sign, t);
      const double scale = 2.0 * pi * (std::cosh(Y + delta) - 1.0);
      CHECK(std::abs(num - closed) / scale < 1e-5);
    }
  }
}
