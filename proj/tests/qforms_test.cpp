#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "hyplab/qforms.hpp"
#include "hyplab/specfun.hpp"

using namespace hyplab;

namespace {

// L(1, chi_D) = -pi |D|^{-3/2} sum_{a=1}^{|D|} chi_D(a) a.
double l1_finite_sum(std::int64_t D) {
  const std::int64_t m = -D;
  double s = 0.0;
  for (std::int64_t a = 1; a < m; ++a) s += kronecker(D, a) * static_cast<double>(a);
  return -std::numbers::pi * s / std::pow(static_cast<double>(m), 1.5);
}

// Number of reduced forms by direct enumeration of |b| <= a <= c.
std::size_t count_reduced(std::int64_t D) {
  std::size_t h = 0;
  for (std::int64_t a = 1; 3 * a * a <= -D; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      const std::int64_t num = b * b - D;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
      ++h;
    }
  }
  return h;
}

}  // namespace

TEST_CASE("fundamental discriminants") {
  CHECK(is_fundamental(-3));
  CHECK_FALSE(is_fundamental(-12));
  CHECK(is_fundamental(-20));
  CHECK(is_fundamental(-4));
  CHECK(is_fundamental(-8));
  CHECK_FALSE(is_fundamental(-16));
  CHECK_FALSE(is_fundamental(-1));
  CHECK_FALSE(is_fundamental(-27));
  CHECK_FALSE(is_fundamental(-5));
  CHECK_FALSE(is_fundamental(0));
  CHECK_FALSE(is_fundamental(5));
  CHECK_THROWS_AS(Discriminant(-12), DomainError);
  CHECK_THROWS_AS(Discriminant(8), DomainError);
  CHECK(Discriminant(-3).units() == 6);
  CHECK(Discriminant(-4).units() == 4);
  CHECK(Discriminant(-7).units() == 2);
}

TEST_CASE("fundamental discriminants in a range") {
  const auto ds = fundamental_discriminants(-40, -3);
  std::vector<std::int64_t> got;
  for (const auto& d : ds) got.push_back(d.value());
  const std::vector<std::int64_t> want{-3, -4, -7, -8, -11, -15, -19, -20, -23, -24, -31, -35, -39, -40};
  CHECK(got == want);
}

TEST_CASE("form reduction") {
  CHECK(reduce_form({1, 0, 5}) == QuadForm{1, 0, 5});
  CHECK(reduce_form({5, 0, 1}) == QuadForm{1, 0, 5});
  CHECK(reduce_form({2, -2, 3}) == QuadForm{2, 2, 3});
  CHECK(reduce_form({3, 2, 2}) == QuadForm{2, 2, 3});
  CHECK_THROWS_AS(reduce_form({1, 3, 1}), DomainError);
  CHECK_THROWS_AS(reduce_form({-1, 0, -5}), DomainError);
  CHECK_THROWS_AS(reduce_form({1, 2, 1}), DomainError);

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(-6, 6);
  for (int k = 0; k < 300; ++k) {
    // Transform a reduced form by a random word in S and T and reduce back.
    const QuadForm f{2, 1, 3};
    QuadForm g = f;
    for (int step = 0; step < 6; ++step) {
      const std::int64_t n = pick(rng);
      g = {g.a, g.b + 2 * n * g.a, g.a * n * n + g.b * n + g.c};  // x -> x + n y
      g = {g.c, -g.b, g.a};                                        // S
    }
    const QuadForm r = reduce_form(g);
    CHECK(r.discriminant() == -23);
    CHECK(r.is_reduced());
    CHECK((r == QuadForm{2, 1, 3}));
  }
}

TEST_CASE("class groups") {
  CHECK(class_group(Discriminant(-4)) == std::vector<QuadForm>{{1, 0, 1}});
  CHECK(class_group(Discriminant(-20)) == std::vector<QuadForm>{{1, 0, 5}, {2, 2, 3}});
  CHECK(class_group(Discriminant(-23)) == std::vector<QuadForm>{{1, 1, 6}, {2, -1, 3}, {2, 1, 3}});
  CHECK(class_group(Discriminant(-3)).size() == 1);
  CHECK(class_group(Discriminant(-47)).size() == 5);
  CHECK(class_group(Discriminant(-163)).size() == 1);
  CHECK(class_group(Discriminant(-4027)).size() == 9);
}

TEST_CASE("class number formula") {
  CHECK(class_number_formula(Discriminant(-4), std::numbers::pi / 4.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(class_number_formula(Discriminant(-3), std::numbers::pi / (3.0 * std::sqrt(3.0))) ==
        doctest::Approx(1.0).epsilon(1e-15));
  const double l23 = dirichlet_l(1.0, Discriminant(-23)).real();
  CHECK(std::abs(l23 - l1_finite_sum(-23)) < 1e-12);
  CHECK(std::abs(class_number_formula(Discriminant(-23), l23) - 3.0) < 1e-6);
}

TEST_CASE("class numbers agree with the analytic formula and enumeration") {
  double lo = 1e9, hi = 0.0;
  for (const auto& D : fundamental_discriminants(-2000, -3)) {
    const std::size_t h = class_group(D).size();
    CHECK(h == count_reduced(D.value()));
    const double formula = class_number_formula(D, l1_finite_sum(D.value()));
    CHECK(std::abs(formula - static_cast<double>(h)) < 1e-6);
    const double ratio = static_cast<double>(h) / std::sqrt(static_cast<double>(D.abs()));
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(lo >= 1e-2);
  CHECK(hi <= 10.0);
}

TEST_CASE("heegner points") {
  const auto h4 = heegner_points(Discriminant(-4));
  REQUIRE(h4.points.size() == 1);
  CHECK(h4.points[0] == Point(0.0, 1.0));
  CHECK(h4.unit_weight() == doctest::Approx(0.5));
  CHECK(h4.units_ambiguous());

  const auto h3 = heegner_points(Discriminant(-3));
  REQUIRE(h3.points.size() == 1);
  CHECK(h3.points[0].x() == doctest::Approx(-0.5));
  CHECK(h3.points[0].y() == doctest::Approx(std::sqrt(3.0) / 2.0));
  CHECK(h3.unit_weight() == doctest::Approx(1.0 / 3.0));

  const auto h23 = heegner_points(Discriminant(-23));
  REQUIRE(h23.points.size() == 3);
  CHECK(h23.points[0].y() == doctest::Approx(std::sqrt(23.0) / 2.0));
  CHECK(h23.points[1].y() == doctest::Approx(std::sqrt(23.0) / 4.0));
  CHECK(h23.points[2].y() == doctest::Approx(std::sqrt(23.0) / 4.0));
  CHECK_FALSE(h23.units_ambiguous());
  CHECK(h23.unit_weight() == 1.0);
}

TEST_CASE("heegner points are distinct points of the fundamental domain") {
  for (const auto& D : fundamental_discriminants(-3000, -3)) {
    const auto hs = heegner_points(D);
    REQUIRE(hs.points.size() == hs.forms.size());
    std::set<std::pair<double, double>> seen;
    for (const Point& z : hs.points) {
      CHECK(in_fundamental_domain(z));
      const auto r = reduce_to_fundamental(z);
      CHECK(std::abs(r.point.as_complex() - z.as_complex()) < 1e-9);
      seen.insert({z.x(), z.y()});
    }
    CHECK(seen.size() == hs.points.size());
  }
}

TEST_CASE("kronecker symbol") {
  CHECK(kronecker(-4, 3) == -1);
  CHECK(kronecker(-4, 2) == 0);
  CHECK(kronecker(-23, 2) == 1);
  CHECK(kronecker(-3, 2) == -1);
  CHECK(kronecker(-8, 3) == 1);
  CHECK(kronecker(-7, 1) == 1);
  CHECK(kronecker(-7, -1) == -1);
  CHECK(kronecker(-7, 0) == 0);
  CHECK(kronecker(1, 0) == 1);
  for (int n = 1; n < 200; n += 2) CHECK(kronecker(-4, n) == ((n % 4 == 1) ? 1 : -1));
}

TEST_CASE("kronecker symbol is multiplicative and periodic") {
  std::mt19937_64 rng(7);
  const auto ds = fundamental_discriminants(-10000, -3);
  std::uniform_int_distribution<std::size_t> pick_d(0, ds.size() - 1);
  std::uniform_int_distribution<std::int64_t> pick_n(1, 1000000);
  for (int k = 0; k < 1000; ++k) {
    const std::int64_t D = ds[pick_d(rng)].value();
    const std::int64_t m = pick_n(rng), n = pick_n(rng);
    CHECK(kronecker(D, m * n) == kronecker(D, m) * kronecker(D, n));
    CHECK(kronecker(D, m) == kronecker(D, m + (-D)));
  }
  const CharacterTable chi(Discriminant(-23));
  CHECK(chi.modulus() == 23);
  for (std::int64_t n = -50; n < 100; ++n) CHECK(chi(n) == kronecker(-23, n));
}
