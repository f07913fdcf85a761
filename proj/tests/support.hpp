#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <numbers>
#include <random>

#include "hyplab/halfplane.hpp"

namespace hyplab::testing {

inline double rel_err(std::complex<double> got, std::complex<double> want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

// Uniformly drawn bottom row (c, d), completed to a matrix with every entry in [-bound, bound].
inline ModularMatrix random_matrix(std::mt19937_64& rng, std::int64_t bound) {
  std::uniform_int_distribution<std::int64_t> pick(-bound, bound);
  for (;;) {
    const std::int64_t c = pick(rng), d = pick(rng);
    if (std::gcd(c, d) != 1) continue;
    // a d - b c = 1 via the extended Euclidean algorithm.
    std::int64_t r0 = d, r1 = c, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
      const std::int64_t q = r0 / r1;
      r0 -= q * r1;
      std::swap(r0, r1);
      s0 -= q * s1;
      std::swap(s0, s1);
      t0 -= q * t1;
      std::swap(t0, t1);
    }
    // s0 d + t0 c = r0 = +-1.
    std::int64_t a = s0 * r0, b = -t0 * r0;
    if (c != 0) {
      const std::int64_t k = -static_cast<std::int64_t>(std::llround(static_cast<double>(a) / static_cast<double>(c)));
      a += k * c;
      b += k * d;
    } else if (d != 0) {
      const std::int64_t k = -static_cast<std::int64_t>(std::llround(static_cast<double>(b) / static_cast<double>(d)));
      a += k * c;
      b += k * d;
    }
    if (std::abs(a) > bound || std::abs(b) > bound) continue;
    return {a, b, c, d};
  }
}

inline Point random_point(std::mt19937_64& rng, double xlo = -2.0, double xhi = 2.0, double ylo = 0.1, double yhi = 3.0) {
  std::uniform_real_distribution<double> ux(xlo, xhi), uy(ylo, yhi);
  return {ux(rng), uy(rng)};
}

// sum over coprime (c, d) modulo sign of y^2 / |cz + d|^4 for |cz + d| <= R,
// plus the tail 3y / (pi R^2) from the density 6/pi^2 of coprime pairs.
inline double lattice_e2(const Point& z, double R) {
  const double x = z.x(), y = z.y();
  double sum = y * y;
  const auto cmax = static_cast<std::int64_t>(R / y);
  for (std::int64_t c = 1; c <= cmax; ++c) {
    const double cy = static_cast<double>(c) * y;
    const double half = std::sqrt(R * R - cy * cy);
    const double centre = -static_cast<double>(c) * x;
    for (auto d = static_cast<std::int64_t>(std::ceil(centre - half)); d <= static_cast<std::int64_t>(std::floor(centre + half)); ++d) {
      if (std::gcd(c, d) != 1) continue;
      const double re = static_cast<double>(c) * x + static_cast<double>(d);
      const double q = re * re + cy * cy;
      if (q > R * R) continue;
      sum += y * y / (q * q);
    }
  }
  return sum + 3.0 * y / (std::numbers::pi * R * R);
}

}  // namespace hyplab::testing
