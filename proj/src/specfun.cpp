#include "hyplab/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace hyplab {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// B_{2j} / (2j)! for j = 1 .. 12.
constexpr std::array<double, 12> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
    854513.0 / 138.0 / 1.1240007277776077e21,
    -236364091.0 / 2730.0 / 6.2044840173323941e23};

bool is_nonpositive_integer(cplx s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

// log(sin(pi z)) without overflow for large |Im z|.
cplx log_sin_pi(cplx z) {
  const cplx I(0.0, 1.0);
  if (std::abs(z.imag()) < 20.0) return std::log(std::sin(kPi * z));
  if (z.imag() > 0.0) {
    return -I * kPi * z + std::log(std::exp(2.0 * I * kPi * z) - 1.0) - std::log(2.0 * I);
  }
  return I * kPi * z + std::log(1.0 - std::exp(-2.0 * I * kPi * z)) - std::log(2.0 * I);
}

// (e^x - 1) / x without cancellation.
double expm1c(double x) { return x == 0.0 ? 1.0 : std::expm1(x) / x; }

cplx expm1c(cplx x) {
  if (x.imag() == 0.0) return expm1c(x.real());
  if (std::abs(x) < 1e-8) return 1.0 + x / 2.0 + x * x / 6.0;
  const double a = x.real();
  const double b = x.imag();
  const double sh = std::sin(0.5 * b);
  const cplx em1(std::expm1(a) * std::cos(b) - 2.0 * sh * sh, std::exp(a) * std::sin(b));
  return em1 / x;
}

double neg_pow(double x, double s) {
  if (s == 1.0) return 1.0 / x;
  if (s == 2.0) return 1.0 / (x * x);
  return std::pow(x, -s);
}

cplx neg_pow(double x, cplx s) {
  if (s.imag() == 0.0) return neg_pow(x, s.real());
  return std::exp(-s * std::log(x));
}

int em_cutoff(cplx s) {
  const double n = std::max({20.0, std::ceil(2.0 * std::abs(s.imag())), std::ceil(std::abs(s.real()))});
  return static_cast<int>(n);
}

// Euler-Maclaurin for zeta(s, q) - 1/(s - 1).
template <class S>
S hurwitz_regular_impl(S s, double q, int N) {
  S sum = 0.0;
  for (int k = 0; k < N; ++k) sum += neg_pow(k + q, s);
  const double x = N + q;
  const double L = std::log(x);
  sum += -L * expm1c((1.0 - s) * L);
  const S xs = neg_pow(x, s);
  sum += 0.5 * xs;
  S poch = s;                 // s (s+1) ... (s+2j-2)
  S power = xs / x;           // x^{-s-2j+1}
  const double inv_x2 = 1.0 / (x * x);
  for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
    sum += kBernoulliOverFactorial[j] * poch * power;
    const double m = 2.0 * static_cast<double>(j) + 1.0;
    poch *= (s + m) * (s + m + 1.0);
    power *= inv_x2;
  }
  return sum;
}

cplx hurwitz_regular(cplx s, double q) {
  const int N = em_cutoff(s);
  if (s.imag() == 0.0) return hurwitz_regular_impl<double>(s.real(), q, N);
  return hurwitz_regular_impl<cplx>(s, q, N);
}

}  // namespace

cplx clgamma(cplx s) {
  if (is_nonpositive_integer(s)) {
    std::ostringstream os;
    os << "Gamma has a pole at " << s.real();
    throw PoleError(os.str());
  }
  if (s.real() < 0.5) {
    return std::log(kPi) - log_sin_pi(s) - clgamma(1.0 - s);
  }
  const cplx z = s - 1.0;
  cplx acc = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) acc += kLanczos[k] / (z + static_cast<double>(k));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

cplx cgamma(cplx s) {
  if (s.imag() == 0.0 && s.real() > 0.0 && s.real() < 170.0) {
    return std::tgamma(s.real());
  }
  return std::exp(clgamma(s));
}

double gauss_2f1_condition(cplx a, cplx b, cplx c, cplx z) {
  const double az = std::abs(z);
  double worst = az;
  const int jmax = static_cast<int>(std::abs(a) + std::abs(b) + std::abs(c)) + 64;
  for (int j = 0; j <= jmax; ++j) {
    const double jj = j;
    const double den = std::abs((c + jj) * (jj + 1.0));
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, az * std::abs((a + jj) * (b + jj)) / den);
  }
  return worst;
}

cplx hyp2f1_series(cplx a, cplx b, cplx c, cplx z) {
  if (!(std::abs(z) < 1.0)) throw DomainError("hyp2f1_series needs |z| < 1");
  cplx sum = 1.0;
  cplx term = 1.0;
  double biggest = 1.0;
  for (int j = 0; j < 2000000; ++j) {
    const double jj = j;
    const cplx den = (c + jj) * (jj + 1.0);
    if (den == cplx(0.0)) throw DomainError("2F1 with c a non-positive integer");
    const cplx ratio = (a + jj) * (b + jj) / den * z;
    term *= ratio;
    sum += term;
    biggest = std::max(biggest, std::abs(term));
    if (term == cplx(0.0)) break;
    if (std::abs(ratio) < 1.0 && std::abs(term) <= 1e-17 * (1.0 - std::abs(z)) * std::abs(sum)) break;
    if (j == 2000000 - 1) throw NumericError("2F1 series did not converge");
  }
  if (biggest > 1e4 * std::max(std::abs(sum), 1e-300)) {
    throw NumericError("2F1 series cancellation: terms exceed the sum by more than 1e4");
  }
  return sum;
}

cplx gauss_2f1(cplx a, cplx b, cplx c, cplx z) {
  if (std::abs(z) > 0.5 + 1e-15) {
    std::ostringstream os;
    os << "gauss_2f1 argument |z| = " << std::abs(z) << " outside |z| <= 1/2";
    throw DomainError(os.str());
  }
  return hyp2f1_series(a, b, c, z);
}

cplx hurwitz_zeta_regular(cplx s, double q) {
  if (!(q > 0.0)) throw DomainError("hurwitz_zeta needs q > 0");
  return hurwitz_regular(s, q);
}

cplx hurwitz_zeta(cplx s, double q) {
  if (s == cplx(1.0)) throw PoleError("Hurwitz zeta has a pole at s = 1");
  return hurwitz_zeta_regular(s, q) + 1.0 / (s - 1.0);
}

cplx zeta(cplx s) {
  if (s == cplx(1.0)) throw PoleError("zeta has a pole at s = 1");
  return hurwitz_zeta(s, 1.0);
}

cplx xi(cplx s) {
  // pi^{-s/2} Gamma(s/2 + 1) (s - 1) zeta(s), both removable poles cancelled.
  const cplx s_minus_1_zeta = (s - 1.0) * hurwitz_regular(s, 1.0) + 1.0;
  return std::exp(-0.5 * s * std::log(kPi) + clgamma(0.5 * s + 1.0)) * s_minus_1_zeta;
}

cplx completed_zeta(cplx s) {
  if (s == cplx(0.0) || s == cplx(1.0)) throw PoleError("Lambda(s) has poles at s = 0, 1");
  return std::exp(-0.5 * s * std::log(kPi) + clgamma(0.5 * s)) * zeta(s);
}

cplx dirichlet_l(cplx s, const CharacterTable& chi) {
  const std::int64_t m = chi.modulus();
  const double md = static_cast<double>(m);
  const int N = em_cutoff(s);
  // sum chi(r) = 0 removes the 1/(s-1) parts, so the regular Hurwitz values suffice.
  cplx total = 0.0;
  if (s.imag() == 0.0) {
    double acc = 0.0;
    for (std::int64_t r = 1; r <= m; ++r) {
      const int c = chi(r);
      if (c != 0) acc += c * hurwitz_regular_impl<double>(s.real(), r / md, N);
    }
    total = acc;
  } else {
    for (std::int64_t r = 1; r <= m; ++r) {
      const int c = chi(r);
      if (c != 0) total += static_cast<double>(c) * hurwitz_regular_impl<cplx>(s, r / md, N);
    }
  }
  return total * neg_pow(md, s);
}

cplx dirichlet_l(cplx s, const Discriminant& D) { return dirichlet_l(s, CharacterTable(D)); }

double bessel_j1_ratio(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = ax * ax;
    return 1.0 - x2 / 8.0 + x2 * x2 / 192.0;
  }
  return 2.0 * std::cyl_bessel_j(1.0, ax) / ax;
}

}  // namespace hyplab
