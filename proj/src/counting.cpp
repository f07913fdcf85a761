// Hyperbolic lattice-point counting for PSL(2,Z).
//
// With g_z the upper triangular matrix taking i to z, the identity
// 2 cosh d(g i, i) = |g|_F^2 gives 4 u(gamma z, w) + 2 = |g_w^{-1} gamma g_z|_F^2.
// Since 2 cosh d(gamma z, w) >= Im w / Im(gamma z) = Im w |cz + d|^2 / Im z, only
// bottom rows (c, d) with Im w |cz + d|^2 <= X Im z contribute. For a coprime row
// the solutions of ad - bc = 1 are (a0 + tc, b0 + td), t in Z, along which the
// norm is a quadratic alpha t^2 + beta t + gamma0 with alpha > 0.

#include "hyplab/counting.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace hyplab {

namespace {

using i128 = __int128;

struct Bezout {
  std::int64_t a0, b0;  // a0 d - b0 c = 1
};

// Extended Euclid on (d, c) with gcd 1.
Bezout bezout(std::int64_t c, std::int64_t d) {
  std::int64_t old_r = d, r = c;
  std::int64_t old_s = 1, s = 0;
  std::int64_t old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  // old_s d + old_t c = old_r = +-1
  if (old_r < 0) {
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_s, -old_t};
}

// Exact K <= c * X for integers K, c >= 0 and a finite double X >= 0.
bool le_scaled(i128 K, i128 c, double X) {
  int e = 0;
  const double frac = std::frexp(X, &e);  // X = frac * 2^e, frac in [0.5, 1)
  auto m = static_cast<std::int64_t>(std::ldexp(frac, 53));
  e -= 53;
  while (m != 0 && (m & 1) == 0 && e < 0) {
    m >>= 1;
    ++e;
  }
  if (e >= 0) {
    if (e > 60) return true;
    return K <= c * static_cast<i128>(m) * (static_cast<i128>(1) << e);
  }
  if (-e > 60) return K <= 0 || (c == 0 ? false : K <= (c * m) >> (-e));
  return (K << (-e)) <= c * static_cast<i128>(m);
}

// |g_w^{-1} gamma g_z|_F^2 for the row family gamma(t) = [[a0 + tc, b0 + td], [c, d]],
// as coefficients of alpha t^2 + beta t + gamma0.
struct Quadratic {
  double alpha, beta, gamma0;
  double at(double t) const { return (alpha * t + beta) * t + gamma0; }
  double magnitude(double t) const { return alpha * t * t + std::abs(beta * t) + std::abs(gamma0); }
};

struct Geometry {
  double xz, yz, xw, yw;

  Quadratic row(std::int64_t a0, std::int64_t b0, std::int64_t c, std::int64_t d) const {
    const double cd = static_cast<double>(c);
    const double m = cd * xz + static_cast<double>(d);
    const double e1 = static_cast<double>(a0) - xw * cd;
    const double e2 = static_cast<double>(a0) * xz + static_cast<double>(b0) - xw * m;
    const double r1 = yz / yw;
    const double r2 = 1.0 / (yz * yw);
    const double constant = cd * cd * yw * yz + m * m * yw / yz;
    return {cd * cd * r1 + m * m * r2, 2.0 * (cd * e1 * r1 + e2 * m * r2),
            e1 * e1 * r1 + e2 * e2 * r2 + constant};
  }
};

// Exact norm for z = w = root of (A, B, C): 4A^2|D| |g^{-1} gamma g|^2 =
// |D| [(2Ap + Br)^2 + (2As - Br)^2 + r^2 |D|] + [4A^2 q - 2AB(p - s) - rB^2]^2.
struct ExactNorm {
  i128 A, B, absD;
  i128 scale() const { return 4 * A * A * absD; }
  i128 operator()(i128 p, i128 q, i128 r, i128 s) const {
    const i128 u = 2 * A * p + B * r;
    const i128 v = 2 * A * s - B * r;
    const i128 w = 4 * A * A * q - 2 * A * B * (p - s) - r * B * B;
    return absD * (u * u + v * v + r * r * absD) + w * w;
  }
};

struct RowCounter {
  Geometry geo;
  double X;
  std::optional<ExactNorm> exact;
  bool ambiguous = false;

  // Number of integers t with norm(gamma(t)) <= X along one row.
  std::int64_t count_row(std::int64_t a0, std::int64_t b0, std::int64_t c, std::int64_t d) {
    Quadratic qd = geo.row(a0, b0, c, d);
    // Recentre so the admissible t are near 0.
    const double center = -qd.beta / (2.0 * qd.alpha);
    const auto shift = static_cast<std::int64_t>(std::llround(center));
    if (shift != 0) {
      a0 += shift * c;
      b0 += shift * d;
      qd = geo.row(a0, b0, c, d);
    }
    const double tc = -qd.beta / (2.0 * qd.alpha);
    const double qmin = qd.gamma0 + 0.5 * qd.beta * tc;
    const double slack = 1e-9 * std::max(1.0, X);
    if (qmin > X + slack) return 0;
    const double hw = std::sqrt(std::max(0.0, X - qmin) / qd.alpha);
    auto lo = static_cast<std::int64_t>(std::ceil(tc - hw));
    auto hi = static_cast<std::int64_t>(std::floor(tc + hw));

    if (exact) {
      const ExactNorm& en = *exact;
      const i128 sc = en.scale();
      auto inside = [&](std::int64_t t) {
        return le_scaled(en(static_cast<i128>(a0) + static_cast<i128>(t) * c,
                            static_cast<i128>(b0) + static_cast<i128>(t) * d, c, d),
                         sc, X);
      };
      while (inside(lo - 1)) --lo;
      while (lo <= hi && !inside(lo)) ++lo;
      while (inside(hi + 1)) ++hi;
      while (hi >= lo && !inside(hi)) --hi;
      return hi >= lo ? hi - lo + 1 : 0;
    }

    auto inside = [&](std::int64_t t) { return qd.at(static_cast<double>(t)) <= X; };
    auto check = [&](std::int64_t t) {
      const double v = qd.at(static_cast<double>(t));
      const double tol = 64.0 * std::numeric_limits<double>::epsilon() * qd.magnitude(static_cast<double>(t));
      if (std::abs(v - X) <= tol) ambiguous = true;
    };
    while (inside(lo - 1)) --lo;
    while (lo <= hi && !inside(lo)) ++lo;
    while (inside(hi + 1)) ++hi;
    while (hi >= lo && !inside(hi)) --hi;
    check(lo);
    check(lo - 1);
    check(hi);
    check(hi + 1);
    return hi >= lo ? hi - lo + 1 : 0;
  }
};

}  // namespace

double volume_modular() { return std::numbers::pi / 3.0; }

// pi X / vol with vol = pi / 3, written exactly.
double main_term(double X) { return 3.0 * X; }

CountResult count(const CountQuery& q) {
  CountResult res;
  res.main_term = main_term(q.X);
  if (!(q.X >= 2.0)) {
    res.exact = true;
    res.error = -res.main_term;
    return res;
  }
  RowCounter rc{{q.z.x(), q.z.y(), q.w.x(), q.w.y()}, q.X, std::nullopt};
  if (q.form) {
    const std::int64_t D = q.form->discriminant();
    if (D >= 0 || q.form->a <= 0) throw DomainError("count: exact path needs a positive definite form");
    rc.exact = ExactNorm{q.form->a, q.form->b, -D};
  }

  std::int64_t total = 0;
  std::int64_t rows = 0;
  // Row (0, 1): translations.
  total += rc.count_row(1, 0, 0, 1);
  ++rows;

  const double yz = q.z.y();
  const double xz = q.z.x();
  const double L = q.X * yz / q.w.y() * (1.0 + 1e-12) + 1e-12;
  for (std::int64_t c = 1;; ++c) {
    const double cd = static_cast<double>(c);
    const double rem = L - cd * cd * yz * yz;
    if (rem < 0.0) break;
    const double r = std::sqrt(rem);
    const auto dlo = static_cast<std::int64_t>(std::floor(-cd * xz - r));
    const auto dhi = static_cast<std::int64_t>(std::ceil(-cd * xz + r));
    for (std::int64_t d = dlo; d <= dhi; ++d) {
      if (std::gcd(c, d) != 1) continue;
      ++rows;
      const Bezout bz = bezout(c, d);
      total += rc.count_row(bz.a0, bz.b0, c, d);
    }
  }
  res.count = total;
  res.error = static_cast<double>(total) - res.main_term;
  res.exact = rc.exact.has_value();
  res.boundary_ambiguous = rc.ambiguous;
  res.rows = rows;
  return res;
}

std::int64_t brute_force_count(const CountQuery& q) {
  if (q.X > kBruteForceMaxX) {
    std::ostringstream os;
    os << "brute_force_count: X = " << q.X << " exceeds the oracle scale " << kBruteForceMaxX;
    throw DomainError(os.str());
  }
  if (!(q.X >= 2.0)) return 0;
  auto fro2 = [](const Point& p) { return p.y() + p.x() * p.x() / p.y() + 1.0 / p.y(); };
  // |g_z^{-1}|_F = |g_z|_F for 2x2 matrices of determinant 1.
  const double bound = std::sqrt(fro2(q.w)) * std::sqrt(q.X) * std::sqrt(fro2(q.z));
  const auto B = static_cast<std::int64_t>(std::ceil(bound));
  const double limit = q.X * (1.0 + 1e-9);

  std::int64_t n = 0;
  auto test = [&](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    if (!(c > 0 || (c == 0 && d > 0))) return;
    if (std::abs(d) > B) return;
    const ModularMatrix g(a, b, c, d);
    if (4.0 * ppinv(apply(g, q.z), q.w) + 2.0 <= limit) ++n;
  };
  for (std::int64_t a = -B; a <= B; ++a) {
    for (std::int64_t b = -B; b <= B; ++b) {
      for (std::int64_t c = 0; c <= B; ++c) {
        if (a != 0) {
          const std::int64_t num = 1 + b * c;
          if (num % a != 0) continue;
          test(a, b, c, num / a);
        } else if (b * c == -1) {
          for (std::int64_t d = -B; d <= B; ++d) test(a, b, c, d);
        }
      }
    }
  }
  return n;
}

double heegner_error_average(const Discriminant& D, double X, std::span<const double> weights) {
  const auto forms = class_group(D);
  if (!weights.empty() && weights.size() != forms.size()) {
    throw UsageError("heegner_error_average: need one weight per Heegner point");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < forms.size(); ++k) {
    const CountResult r = count(CountQuery::heegner(forms[k], X));
    acc += (weights.empty() ? 1.0 : weights[k]) * r.error;
  }
  return acc / static_cast<double>(forms.size());
}

}  // namespace hyplab
