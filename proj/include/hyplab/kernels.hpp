#pragma once

#include <complex>
#include <span>
#include <vector>

#include "hyplab/errors.hpp"

namespace hyplab {

using cplx = std::complex<double>;

enum class Sign { Minus = -1, Plus = +1 };

// Radial test kernels as functions of the point-pair invariant u.
//  ball(R):            k_R = 1_[0, (cosh R - 1)/2]
//  smoothed(Y, d, +-): k^+- = k_{Y +- d} * k_d, with k_d the ball of radius d
//                      normalized to unit mass 1/(4 pi sinh^2(d/2)).
class KernelSpec {
public:
  enum class Kind { Ball, Smoothed };

  static KernelSpec ball(double R);
  static KernelSpec smoothed(double Y, double delta, Sign sign);
  // Y from cosh Y = X / 2.
  static KernelSpec smoothed_from_count(double X, double delta, Sign sign);

  Kind kind() const { return kind_; }
  double R() const { return R_; }
  double Y() const { return Y_; }
  double delta() const { return delta_; }
  Sign sign() const { return sign_; }
  // Radius of the large ball: R for ball, Y +- delta for smoothed.
  double outer_radius() const;
  // Largest hyperbolic distance in the support.
  double support_radius() const;

private:
  Kind kind_ = Kind::Ball;
  double R_ = 0.0, Y_ = 0.0, delta_ = 0.0;
  Sign sign_ = Sign::Plus;
};

// Y with cosh Y = X / 2 (X > 2).
double radius_from_count(double X);

// Hyperbolic area of B(z, R) n B(w, rho) with d(z, w) = d.
double lens_area(double d, double R, double rho);

double kernel_eval(const KernelSpec& spec, double u);

struct SandwichReport {
  bool ok = true;
  std::size_t checked = 0;
  std::size_t violations = 0;
  double worst_lower = 0.0;  // max(k^- - 1_X), should be <= 0
  double worst_upper = 0.0;  // max(1_X - k^+), should be <= 0
};

// Pointwise k^-(u) <= 1_[0,(X-2)/4](u) <= k^+(u) with 1e-10 slack. The
// optional radii replace Y - delta and Y + delta (used to test the test).
SandwichReport sandwich_check(double X, double delta, std::span<const double> u_grid);
SandwichReport sandwich_check(double X, double delta, std::span<const double> u_grid,
                              double inner_radius, double outer_radius);
// Log-spaced u values covering the support of k^+ and the indicator jump.
std::vector<double> sandwich_grid(double X, double delta, std::size_t n);

// Selberg-Harish-Chandra transform of the ball kernel, normalized so that
// h_R(i/2) = 2 pi (cosh R - 1). Real t != 0 or t = i/2.
cplx sht_ball(double R, cplx t);
// h^+-(t) = h_{Y+-d}(t) h_d(t) / (4 pi sinh^2(d/2)); exactly 2 pi (cosh(Y +- d) - 1) at i/2.
cplx sht_smoothed(double Y, double delta, Sign sign, cplx t);
cplx sht(const KernelSpec& spec, cplx t);

struct SphericalParams {
  int n = 0;
  int k = 0;
  cplx s = 0.5;
  double r = 0.0;
};

// P^n_{s,k}(r) = tanh(r/2)^|n| (2/(1+cosh r))^s F(s - k_n, s + k_n + |n|, 1 + |n|; tanh^2(r/2)).
// For n = k = 0 this is the Legendre function P_{-s}(cosh r), evaluated by
// Mehler's integral for any r; other (n, k) use the series and need
// tanh^2(r/2) <= 1/2 with a well-conditioned series.
cplx spherical_p(const SphericalParams& p);
// Leading term 2 / sqrt(2 pi |t| sinh r) cos(r t - pi/4) of P^0_{1/2+it}(r) for large t.
double spherical_asymptotic(double t, double r);

// 2 pi int_0^inf k((cosh r - 1)/2) P^0_{1/2+it}(r) sinh r dr by quadrature.
// Throws NumericError if the adaptive quadrature reports an error estimate
// above 1e-9 of the integral's L1 norm.
cplx sht_numeric(const KernelSpec& spec, cplx t);

}  // namespace hyplab
