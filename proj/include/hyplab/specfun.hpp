#pragma once

#include <complex>

#include "hyplab/errors.hpp"
#include "hyplab/qforms.hpp"

namespace hyplab {

using cplx = std::complex<double>;

// Gamma via the Lanczos approximation (g = 7, 9 terms), reflection for Re s < 1/2.
// Throws PoleError at non-positive integers.
cplx cgamma(cplx s);
// A branch of log Gamma; exp(clgamma(s)) == cgamma(s). Finite for |Im s| large
// where Gamma itself under- or overflows.
cplx clgamma(cplx s);

// 2F1(a, b; c; z) by its power series, for |z| <= 1/2. Throws DomainError
// outside that disc and NumericError when the series loses more than ~4
// digits to cancellation (large parameters; see gauss_2f1_condition).
cplx gauss_2f1(cplx a, cplx b, cplx c, cplx z);
// max_j |z (a+j)(b+j) / ((c+j)(j+1))|; the series has a geometric tail bound
// with ratio 1/2 whenever this is <= 1/2.
double gauss_2f1_condition(cplx a, cplx b, cplx c, cplx z);
// Raw power series for |z| < 1, summed until the terms decay and drop below
// 1e-17 (1 - |z|) of the sum. Used where the caller has arranged a benign argument (e.g. after a
// Pfaff transformation).
cplx hyp2f1_series(cplx a, cplx b, cplx c, cplx z);

// Hurwitz zeta minus its pole part: zeta(s, q) - 1/(s - 1). Entire in s.
// Euler-Maclaurin with N = max(20, 2|Im s|) and 12 Bernoulli corrections.
cplx hurwitz_zeta_regular(cplx s, double q);
// Throws PoleError at s = 1. q in (0, 1].
cplx hurwitz_zeta(cplx s, double q);
cplx zeta(cplx s);

// Entire completion xi(s) = s(s-1)/2 pi^{-s/2} Gamma(s/2) zeta(s), xi(0) = xi(1) = 1/2.
cplx xi(cplx s);
// Lambda(s) = pi^{-s/2} Gamma(s/2) zeta(s), poles at 0 and 1.
cplx completed_zeta(cplx s);

// L(s, chi_D) = |D|^{-s} sum_r chi_D(r) zeta(s, r/|D|); finite at s = 1.
cplx dirichlet_l(cplx s, const Discriminant& D);
cplx dirichlet_l(cplx s, const CharacterTable& chi);

// K_nu(y) = int_0^inf exp(-y cosh v) cosh(nu v) dv for complex order.
// Purely imaginary orders give a real result. Throws DomainError for y <= 0
// or |Re nu| >= 10.
cplx kbessel(cplx nu, double y);
// Real-order convenience for nu = i t.
double kbessel_imag(double t, double y);

// 2 J_1(x) / x, equal to 1 at x = 0.
double bessel_j1_ratio(double x);

}  // namespace hyplab
