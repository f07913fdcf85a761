#include "hyplab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "hyplab/specfun.hpp"

namespace hyplab {

namespace {

constexpr double kPi = std::numbers::pi;

// One instance per nesting level: the rule extends its tables lazily, so an
// integrand must not reuse the instance that is integrating it.
boost::math::quadrature::tanh_sinh<double>& tanh_sinh_rule(int level) {
  thread_local boost::math::quadrature::tanh_sinh<double> rules[2];
  return rules[level];
}

bool is_half_i(cplx t) { return std::abs(t - cplx(0.0, 0.5)) < 1e-15; }

double ball_area(double R) { return 2.0 * kPi * (std::cosh(R) - 1.0); }

// 4 pi sinh^2(d/2), the area of a ball of radius d.
double unit_mass(double delta) {
  const double s = std::sinh(0.5 * delta);
  return 4.0 * kPi * s * s;
}

double kernel_at_distance(const KernelSpec& spec, double d) {
  if (spec.kind() == KernelSpec::Kind::Ball) return d <= spec.R() ? 1.0 : 0.0;
  return lens_area(d, spec.outer_radius(), spec.delta()) / unit_mass(spec.delta());
}

}  // namespace

KernelSpec KernelSpec::ball(double R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("ball kernel needs R > 0");
  KernelSpec k;
  k.kind_ = Kind::Ball;
  k.R_ = R;
  return k;
}

KernelSpec KernelSpec::smoothed(double Y, double delta, Sign sign) {
  if (!(delta > 0.0) || !(Y > delta) || !std::isfinite(Y)) {
    throw DomainError("smoothed kernel needs Y > delta > 0");
  }
  KernelSpec k;
  k.kind_ = Kind::Smoothed;
  k.Y_ = Y;
  k.delta_ = delta;
  k.sign_ = sign;
  return k;
}

KernelSpec KernelSpec::smoothed_from_count(double X, double delta, Sign sign) {
  return smoothed(radius_from_count(X), delta, sign);
}

double KernelSpec::outer_radius() const {
  if (kind_ == Kind::Ball) return R_;
  return sign_ == Sign::Plus ? Y_ + delta_ : Y_ - delta_;
}

double KernelSpec::support_radius() const {
  return kind_ == Kind::Ball ? R_ : outer_radius() + delta_;
}

double radius_from_count(double X) {
  if (!(X > 2.0)) throw DomainError("cosh Y = X/2 needs X > 2");
  return std::acosh(0.5 * X);
}

double lens_area(double d, double R, double rho) {
  if (!(d >= 0.0) || !(R >= 0.0) || !(rho >= 0.0)) throw DomainError("lens_area needs non-negative radii");
  if (d < 1e-12) return ball_area(std::min(R, rho));
  if (d >= R + rho) return 0.0;
  if (d + rho <= R) return ball_area(rho);
  if (d + R <= rho) return ball_area(R);

  const double shd = std::sinh(d);
  // Angular measure of the circle of radius s about w that lies in B(z, R),
  // times sinh s. 1 - cos and 1 + cos are formed as products to avoid cancellation.
  auto integrand = [&](double s) {
    if (s <= R - d) return 2.0 * kPi * std::sinh(s);
    if (s <= d - R || s >= d + R) return 0.0;
    const double sd = shd * std::sinh(s);
    const double one_minus = 2.0 * std::sinh(0.5 * (R + d - s)) * std::sinh(0.5 * (R - d + s)) / sd;
    const double one_plus = 2.0 * std::sinh(0.5 * (d + s + R)) * std::sinh(0.5 * (d + s - R)) / sd;
    const double theta = 2.0 * std::atan2(std::sqrt(std::max(one_minus, 0.0)), std::sqrt(std::max(one_plus, 0.0)));
    return 2.0 * theta * std::sinh(s);
  };
  std::vector<double> cuts{0.0};
  for (double b : {R - d, d - R, d + R}) {
    if (b > 0.0 && b < rho) cuts.push_back(b);
  }
  cuts.push_back(rho);
  std::sort(cuts.begin(), cuts.end());
  double area = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k];
    const double b = cuts[k + 1];
    if (b - a <= 1e-12 * (1.0 + b)) continue;  // below the quadrature's resolution
    if (b <= R - d) {
      area += ball_area(b) - ball_area(a);
    } else if (b <= d - R || a >= d + R) {
      // empty
    } else {
      area += tanh_sinh_rule(0).integrate(integrand, a, b, 1e-14);
    }
  }
  return area;
}

double kernel_eval(const KernelSpec& spec, double u) {
  if (!(u >= 0.0)) throw DomainError("kernel_eval needs u >= 0");
  if (spec.kind() == KernelSpec::Kind::Ball) {
    return u <= 0.5 * (std::cosh(spec.R()) - 1.0) ? 1.0 : 0.0;
  }
  return kernel_at_distance(spec, 2.0 * std::asinh(std::sqrt(u)));
}

SandwichReport sandwich_check(double X, double delta, std::span<const double> u_grid,
                              double inner_radius, double outer_radius) {
  const double Y = radius_from_count(X);
  if (!(delta > 0.0) || !(delta < Y)) throw DomainError("sandwich_check needs 0 < delta < Y");
  constexpr double kSlack = 1e-10;
  const double m = unit_mass(delta);
  SandwichReport rep;
  for (double u : u_grid) {
    const double d = 2.0 * std::asinh(std::sqrt(u));
    const double ind = u <= 0.25 * (X - 2.0) ? 1.0 : 0.0;
    const double lower = lens_area(d, inner_radius, delta) / m;
    const double upper = lens_area(d, outer_radius, delta) / m;
    rep.worst_lower = std::max(rep.worst_lower, lower - ind);
    rep.worst_upper = std::max(rep.worst_upper, ind - upper);
    if (lower > ind + kSlack || ind > upper + kSlack) ++rep.violations;
    ++rep.checked;
  }
  rep.ok = rep.violations == 0;
  return rep;
}

SandwichReport sandwich_check(double X, double delta, std::span<const double> u_grid) {
  const double Y = radius_from_count(X);
  return sandwich_check(X, delta, u_grid, Y - delta, Y + delta);
}

std::vector<double> sandwich_grid(double X, double delta, std::size_t n) {
  const double Y = radius_from_count(X);
  const double umax = 0.5 * (std::cosh(Y + 2.0 * delta) - 1.0) * 1.5;
  const double umin = 1e-8;
  std::vector<double> grid;
  grid.reserve(n + 3);
  for (std::size_t k = 0; k < n; ++k) {
    const double f = n == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
    grid.push_back(umin * std::pow(umax / umin, f));
  }
  // The indicator jump and its neighbours.
  const double jump = 0.25 * (X - 2.0);
  grid.push_back(jump);
  grid.push_back(std::nextafter(jump, 0.0));
  grid.push_back(std::nextafter(jump, 2.0 * jump));
  std::sort(grid.begin(), grid.end());
  return grid;
}

cplx sht_ball(double R, cplx t) {
  if (!(R > 0.0)) throw DomainError("sht_ball needs R > 0");
  if (is_half_i(t)) return ball_area(R);
  if (t.imag() != 0.0) throw DomainError("sht_ball supports real t and t = i/2 only");
  const double tr = t.real();
  if (std::abs(tr) < 1e-12) throw DomainError("sht_ball: t = 0 is excluded (pole of Gamma(it))");
  const cplx I(0.0, 1.0);
  const cplx it = I * tr;
  // Gamma(it)/Gamma(3/2+it) = Gamma(1+it) / (it Gamma(3/2+it)).
  const cplx gamma_ratio = std::exp(clgamma(1.0 + it) - clgamma(1.5 + it)) / it;
  // Pfaff: F(-1/2, 3/2; 1-it; 1/(1-e^{2R})) = (1-e^{-2R})^{-1/2} F(-1/2, -1/2-it; 1-it; e^{-2R}),
  // and sqrt(2 pi sinh R) (1 - e^{-2R})^{-1/2} = sqrt(pi) e^{R/2}.
  const cplx F = hyp2f1_series(-0.5, -0.5 - it, 1.0 - it, std::exp(-2.0 * R));
  const double value = 2.0 * std::sqrt(kPi) * std::exp(0.5 * R) * (std::exp(it * R) * gamma_ratio * F).real();
  return value;
}

cplx sht_smoothed(double Y, double delta, Sign sign, cplx t) {
  const KernelSpec spec = KernelSpec::smoothed(Y, delta, sign);
  const double R = spec.outer_radius();
  if (is_half_i(t)) return ball_area(R);
  return sht_ball(R, t) * sht_ball(delta, t) / unit_mass(delta);
}

cplx sht(const KernelSpec& spec, cplx t) {
  if (spec.kind() == KernelSpec::Kind::Ball) return sht_ball(spec.R(), t);
  return sht_smoothed(spec.Y(), spec.delta(), spec.sign(), t);
}

double spherical_asymptotic(double t, double r) {
  const double at = std::abs(t);
  return 2.0 / (std::sqrt(at) * std::sqrt(2.0 * kPi * std::sinh(r))) * std::cos(r * t - 0.25 * kPi);
}

cplx spherical_p(const SphericalParams& p) {
  if (!(p.r >= 0.0) || !std::isfinite(p.r)) throw DomainError("spherical_p needs r >= 0");
  if (p.r == 0.0) return p.n == 0 ? 1.0 : 0.0;
  const double r = p.r;

  if (p.n == 0 && p.k == 0) {
    // Mehler: P_{-s}(cosh r) = sqrt(2)/pi int_0^r cosh((s - 1/2) u) / sqrt(cosh r - cosh u) du,
    // with u = r (1 - w^2) removing the endpoint singularity.
    const cplx nu = p.s - 0.5;
    auto g = [&](double w) -> cplx {
      const double u = r * (1.0 - w * w);
      const double half_gap = 0.5 * r * w * w;
      const double ratio = half_gap > 0.0 ? w / std::sqrt(std::sinh(half_gap)) : std::sqrt(2.0 / r);
      return 2.0 * r * ratio / std::sqrt(2.0 * std::sinh(0.5 * (r + u))) * std::cosh(nu * u);
    };
    using Rule = boost::math::quadrature::gauss<double, 20>;
    const double phase = std::abs(nu.imag()) * r;
    const int panels = std::max(8, static_cast<int>(std::ceil(2.0 * phase / kPi)) + 4);
    cplx acc = 0.0;
    const double h = 1.0 / panels;
    for (int k = 0; k < panels; ++k) acc += Rule::integrate(g, k * h, (k + 1) * h);
    return std::sqrt(2.0) / kPi * acc;
  }

  const int an = std::abs(p.n);
  const double kn = p.n == 0 ? p.k : (p.n > 0 ? p.k : -p.k);
  const double v = std::cosh(r);
  const double th = std::tanh(0.5 * r);
  const double z = th * th;  // (v - 1)/(v + 1)
  const cplx F = gauss_2f1(p.s - kn, p.s + kn + static_cast<double>(an), 1.0 + an, z);
  return std::pow(th, an) * std::exp(p.s * std::log(2.0 / (1.0 + v))) * F;
}

cplx sht_numeric(const KernelSpec& spec, cplx t) {
  const cplx s = cplx(0.5, 0.0) + cplx(0.0, 1.0) * t;
  auto f = [&](double r) -> cplx {
    const double k = kernel_at_distance(spec, r);
    if (k == 0.0) return 0.0;
    return k * spherical_p({0, 0, s, r}) * std::sinh(r);
  };
  // P_{-s}(cosh r) is real when s is real or Re s = 1/2.
  const bool real_valued = s.imag() == 0.0 || s.real() == 0.5;

  cplx total = 0.0;
  double err_total = 0.0;
  double l1_total = 0.0;
  // Where the kernel is constant (the whole ball, or the core of k^+-) the
  // integrand is smooth and oscillatory.
  const double core = spec.kind() == KernelSpec::Kind::Ball ? spec.R()
                                                             : std::max(0.0, spec.outer_radius() - spec.delta());
  if (core > 0.0) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    double err = 0.0;
    double l1 = 0.0;
    total += GK::integrate(f, 0.0, core, 15, 1e-12, &err, &l1);
    err_total += err;
    l1_total += l1;
  }
  // The lens shell has algebraic endpoint behaviour; tanh-sinh copes with that.
  if (spec.kind() == KernelSpec::Kind::Smoothed) {
    const double lo = core;
    const double hi = spec.support_radius();
    auto part = [&](auto proj) {
      double err = 0.0;
      double l1 = 0.0;
      const double v = tanh_sinh_rule(1).integrate([&](double r) { return proj(f(r)); }, lo, hi, 1e-12, &err, &l1);
      err_total += err;
      l1_total += l1;
      return v;
    };
    const double re = part([](cplx v) { return v.real(); });
    const double im = real_valued ? 0.0 : part([](cplx v) { return v.imag(); });
    total += cplx(re, im);
  }
  if (err_total > 1e-9 * std::max(l1_total, 1e-300)) {
    std::ostringstream os;
    os << "sht_numeric: quadrature error estimate " << err_total << " vs L1 " << l1_total;
    throw NumericError(os.str());
  }
  if (real_valued) total = cplx(total.real(), 0.0);
  return 2.0 * kPi * total;
}

}  // namespace hyplab
