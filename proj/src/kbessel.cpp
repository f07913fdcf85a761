// K-Bessel function of complex order from its integral representation
//
//   K_nu(y) = int_0^inf exp(-y cosh v) cosh(nu v) dv
//           = 1/2 int_R exp(-y cosh v + nu v) dv.
//
// For orders with a large imaginary part the result is of size
// exp(-pi |Im nu| / 2) while the integrand on the real axis is of size one,
// so the integral is taken over the shifted line v + i beta (|beta| < pi/2)
// that passes near the saddle point of the integrand. On that line the
// integrand is no larger than the result times a modest factor.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "hyplab/specfun.hpp"

namespace hyplab {

namespace {

constexpr double kPi = std::numbers::pi;
using Panel = boost::math::quadrature::gauss<double, 16>;

// Smallest v >= 0 with y*cb*(cosh v - 1) - sigma*v >= budget.
double tail_cutoff(double y, double cb, double sigma, double budget) {
  auto excess = [&](double v) { return y * cb * (std::cosh(v) - 1.0) - sigma * v - budget; };
  double hi = 1.0;
  while (excess(hi) < 0.0) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  return hi;
}

template <class F>
cplx composite(F&& f, double a, double b, int panels) {
  cplx acc = 0.0;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) acc += Panel::integrate(f, a + p * h, a + (p + 1) * h);
  return acc;
}

}  // namespace

cplx kbessel(cplx nu, double y) {
  if (!(y > 0.0) || !std::isfinite(y)) {
    std::ostringstream os;
    os << "kbessel needs y > 0, got " << y;
    throw DomainError(os.str());
  }
  if (!(std::abs(nu.real()) < 10.0)) throw DomainError("kbessel supports |Re nu| < 10 only");

  const double sigma = nu.real();
  const double tau = nu.imag();
  constexpr double kBudget = 45.0;  // integrand below e^-45 of its peak is dropped

  if (tau == 0.0) {
    // Real order: non-oscillatory, integrate cosh(sigma v) exp(-y cosh v) over [0, v*].
    const double vmax = tail_cutoff(y, 1.0, std::abs(sigma), kBudget);
    const double scale = y;  // exp(-y) factored out
    auto f = [&](double v) {
      return cplx(std::exp(-y * (std::cosh(v) - 1.0)) * std::cosh(sigma * v), 0.0);
    };
    const double width = 1.0 / std::sqrt(y) + 0.05;
    const int panels = std::max(16, static_cast<int>(std::ceil(vmax / width)) * 2);
    return std::exp(-scale) * composite(f, 0.0, vmax, panels).real();
  }

  // Contour height: through the saddle when |tau| < y, else just below pi/2.
  const double at = std::abs(tau);
  const double eps = std::min(0.5, 2.0 / at);
  double beta = at < y ? std::asin(at / y) : 0.5 * kPi;
  beta = std::min(beta, 0.5 * kPi - eps);
  if (tau < 0.0) beta = -beta;
  const double cb = std::cos(beta);
  const double sb = std::sin(beta);

  // exp(-y cos(beta) cosh v + sigma v) decays on both sides.
  const double v_hi = tail_cutoff(y, cb, sigma, kBudget);
  const double v_lo = -tail_cutoff(y, cb, -sigma, kBudget);

  // Normalize by the integrand modulus at v = 0 to keep the sum O(1).
  const cplx I(0.0, 1.0);
  const cplx prefactor = std::exp(I * nu * beta - y * cb);
  auto f = [&](double v) {
    const double ch = std::cosh(v);
    const double sh = std::sinh(v);
    const double re = -y * cb * (ch - 1.0) + sigma * v;
    const double im = -y * sb * sh + tau * v;
    return std::polar(std::exp(re), im);
  };

  // One 16-point panel per period of the total phase variation
  // |tau| L + y |sin beta| (sinh v_hi - sinh v_lo), and enough panels to
  // resolve the envelope of width ~ 1/sqrt(y cos beta).
  const double length = v_hi - v_lo;
  const double phase = at * length + y * std::abs(sb) * (std::sinh(v_hi) - std::sinh(v_lo));
  const double width = 1.0 / std::sqrt(y * cb) + 0.05;
  const int panels = std::max({32, static_cast<int>(std::ceil(1.5 * phase / (2.0 * kPi))),
                               static_cast<int>(std::ceil(2.0 * length / width))});
  cplx value = 0.5 * prefactor * composite(f, v_lo, v_hi, panels);
  if (sigma == 0.0) value = cplx(value.real(), 0.0);
  return value;
}

double kbessel_imag(double t, double y) { return kbessel(cplx(0.0, t), y).real(); }

}  // namespace hyplab
