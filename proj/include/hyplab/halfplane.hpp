#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

#include "hyplab/errors.hpp"

namespace hyplab {

using cplx = std::complex<double>;

// A point of the upper half-plane. The constructor enforces y > 0.
class Point {
public:
  Point(double x, double y);
  explicit Point(cplx z) : Point(z.real(), z.imag()) {}

  double x() const { return x_; }
  double y() const { return y_; }
  cplx as_complex() const { return {x_, y_}; }

  friend bool operator==(const Point&, const Point&) = default;

private:
  double x_;
  double y_;
};

std::ostream& operator<<(std::ostream& os, const Point& z);

// Parses "a", "bi", "a+bi", "a-bi", "i" (e.g. "0.5+14.1347i"). Throws UsageError.
cplx parse_complex(std::string_view text);
// Parses "x+yi", "x-yi", "yi", "i" (e.g. "0.5+2.0i"). Throws UsageError.
Point parse_point(std::string_view text);
std::string format_point(const Point& z);

// Element of PSL(2,Z). Stored with the sign normalization
// (c > 0) or (c == 0 and d > 0), so equal group elements compare equal.
class ModularMatrix {
public:
  ModularMatrix() : ModularMatrix(1, 0, 0, 1) {}
  // Throws DomainError unless ad - bc == 1.
  ModularMatrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

  static ModularMatrix identity() { return {}; }
  static ModularMatrix S() { return {0, -1, 1, 0}; }
  static ModularMatrix T(std::int64_t n = 1) { return {1, n, 0, 1}; }

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t c() const { return c_; }
  std::int64_t d() const { return d_; }

  ModularMatrix inverse() const { return {d_, -b_, -c_, a_}; }

  friend ModularMatrix operator*(const ModularMatrix& l, const ModularMatrix& r);
  friend bool operator==(const ModularMatrix&, const ModularMatrix&) = default;

private:
  std::int64_t a_, b_, c_, d_;
};

std::ostream& operator<<(std::ostream& os, const ModularMatrix& m);

// Mobius action (az + b)/(cz + d).
Point apply(const ModularMatrix& m, const Point& z);

// u(z,w) = |z - w|^2 / (4 Im z Im w).
double ppinv(const Point& z, const Point& w);

// Hyperbolic distance, cosh d = 2u + 1.
double distance(const Point& z, const Point& w);

struct Reduction {
  Point point;
  ModularMatrix matrix;  // point == apply(matrix, input)
};

// Moves z into the closed standard fundamental domain |x| <= 1/2, |z| >= 1.
// Ties go to x in [-1/2, 1/2) and, on the unit arc, to x <= 0.
Reduction reduce_to_fundamental(const Point& z);

// Tolerance used for boundary decisions in reduce_to_fundamental.
inline constexpr double kBoundaryTol = 1e-12;

bool in_fundamental_domain(const Point& z, double tol = kBoundaryTol);

}  // namespace hyplab

template <>
struct std::hash<hyplab::ModularMatrix> {
  std::size_t operator()(const hyplab::ModularMatrix& m) const noexcept {
    std::size_t h = std::hash<std::int64_t>{}(m.a());
    for (auto v : {m.b(), m.c(), m.d()}) {
      h ^= std::hash<std::int64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};
