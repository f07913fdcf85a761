#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "hyplab/counting.hpp"
#include "support.hpp"

using namespace hyplab;
using hyplab::testing::random_matrix;

namespace {

const Point kI(0.0, 1.0);
const Point kRho(-0.5, std::sqrt(3.0) / 2.0);

std::int64_t N(const Point& z, const Point& w, double X) { return count({z, w, X, std::nullopt}).count; }

}  // namespace

TEST_CASE("volume and main term") {
  CHECK(volume_modular() == doctest::Approx(std::numbers::pi / 3.0).epsilon(1e-15));
  CHECK(main_term(100.0) == 300.0);
  CHECK(main_term(7.0) == doctest::Approx(std::numbers::pi * 7.0 / volume_modular()).epsilon(1e-15));
  CHECK(main_term(2.0) == doctest::Approx(6.0));
}

TEST_CASE("small counts") {
  CHECK(N(kI, kI, 2.0) == 2);
  CHECK(N(kRho, kRho, 2.0) == 3);
  CHECK(N(kI, kI, 4.0) == 10);
  CHECK(N(kI, kI, 1.9) == 0);
  const auto r = count({kI, kI, 100.0, std::nullopt});
  CHECK(r.main_term == doctest::Approx(300.0));
  CHECK(r.error == doctest::Approx(static_cast<double>(r.count) - 300.0));
}

TEST_CASE("frozen counts") {
  CHECK(N(kI, kI, 10.0) == 26);
  CHECK(N(kI, kI, 50.0) == 154);
  CHECK(N(kI, kI, 100.0) == 290);
  CHECK(N(kI, kI, 1000.0) == 2994);
  CHECK(N(kI, kI, 1e4) == 30130);
  CHECK(N(kI, kI, 1e5) == 300098);
  CHECK(N(kI, Point(0.0, 2.0), 50.0) == 146);
  CHECK(N(Point(0.123, 1.37), Point(-0.31, 0.77), 200.0) == 603);
}

TEST_CASE("brute force oracle") {
  CHECK(brute_force_count({kI, kI, 2.0, std::nullopt}) == 2);
  CHECK(brute_force_count({kI, kI, 10.0, std::nullopt}) == N(kI, kI, 10.0));
  CHECK(brute_force_count({kI, Point(0.0, 2.0), 50.0, std::nullopt}) == N(kI, Point(0.0, 2.0), 50.0));
  CHECK_THROWS_AS(brute_force_count({kI, kI, 2e4, std::nullopt}), DomainError);
}

TEST_CASE("count equals brute force on random queries") {
  std::mt19937_64 rng(314);
  std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.6, 2.5), uX(2.0, 200.0);
  for (int k = 0; k < 50; ++k) {
    const CountQuery q{{ux(rng), uy(rng)}, {ux(rng), uy(rng)}, uX(rng), std::nullopt};
    CHECK(count(q).count == brute_force_count(q));
  }
}

TEST_CASE("count equals brute force at heegner points") {
  for (std::int64_t d : {-3, -4, -7, -8, -11, -20, -23}) {
    for (const QuadForm& f : class_group(Discriminant(d))) {
      for (double X : {2.0, 10.0, 50.0, 100.0}) {
        const auto q = CountQuery::heegner(f, X);
        const auto r = count(q);
        CHECK(r.exact);
        CHECK(r.count == brute_force_count(q));
      }
    }
  }
}

TEST_CASE("exact heegner path agrees with the floating path off the boundary") {
  const QuadForm f{1, 1, 6};
  for (double X : {37.3, 123.4, 999.9}) {
    const auto exact = count(CountQuery::heegner(f, X));
    const auto fl = count({f.root(), f.root(), X, std::nullopt});
    CHECK(exact.count == fl.count);
  }
  CHECK(count(CountQuery::heegner({1, 1, 6}, 100.0)).count == 292);
}

TEST_CASE("monotone, symmetric and invariant") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ux(-1.0, 1.0), uy(0.3, 2.0);
  for (int k = 0; k < 20; ++k) {
    const Point z(ux(rng), uy(rng)), w(ux(rng), uy(rng));
    std::int64_t prev = 0;
    for (double X : {2.0, 5.0, 20.0, 80.0, 300.0}) {
      const std::int64_t n = N(z, w, X);
      CHECK(n >= prev);
      prev = n;
      CHECK(N(w, z, X) == n);
    }
    const ModularMatrix m = random_matrix(rng, 10);
    CHECK(N(apply(m, z), w, 150.0) == N(z, w, 150.0));
  }
}

TEST_CASE("growth envelope") {
  for (double X : {1e3, 1e4, 1e5}) {
    const auto r = count({kI, kI, X, std::nullopt});
    CHECK(std::abs(r.error) <= 5.0 * std::pow(X, 2.0 / 3.0));
  }
}

TEST_CASE("count at one million is fast") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = count({kI, kI, 1e6, std::nullopt});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(r.count == 3000026);
  CHECK(secs < 10.0);
}

TEST_CASE("heegner error average") {
  CHECK(heegner_error_average(Discriminant(-4), 2.0) == doctest::Approx(-4.0));
  CHECK(heegner_error_average(Discriminant(-3), 2.0) == doctest::Approx(-3.0));
  double sum = 0.0;
  for (const QuadForm& f : class_group(Discriminant(-23))) sum += count(CountQuery::heegner(f, 1000.0)).error;
  CHECK(heegner_error_average(Discriminant(-23), 1000.0) == doctest::Approx(sum / 3.0));
  const std::vector<double> w{1.0, 0.0, 0.0};
  const double first = count(CountQuery::heegner({1, 1, 6}, 1000.0)).error;
  CHECK(heegner_error_average(Discriminant(-23), 1000.0, w) == doctest::Approx(first / 3.0));
  const std::vector<double> bad{1.0};
  CHECK_THROWS(heegner_error_average(Discriminant(-23), 1000.0, bad));
}
