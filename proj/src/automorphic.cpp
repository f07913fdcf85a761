#include "hyplab/automorphic.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "hyplab/specfun.hpp"

namespace hyplab {

namespace {

constexpr double kPi = std::numbers::pi;

// sigma_a(n) = sum_{d | n} d^a.
cplx divisor_sum(int n, cplx a) {
  cplx acc = 0.0;
  for (int d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    acc += std::exp(a * std::log(static_cast<double>(d)));
    const int e = n / d;
    if (e != d) acc += std::exp(a * std::log(static_cast<double>(e)));
  }
  return acc;
}

cplx real_power(double base, cplx e) { return std::exp(e * std::log(base)); }

}  // namespace

cplx phi(cplx s) {
  if (std::abs(s - 0.5) < 1e-14 || std::abs(s - 1.0) < 1e-14) throw PoleError("phi: pole of the scattering coefficient");
  // phi(s) phi(1 - s) = 1 keeps Gamma away from its poles on the left.
  if (s.real() < 0.5) {
    const cplx mirror = phi(1.0 - s);
    if (std::abs(mirror) < 1e-14) throw NumericError("phi: zeta(2s) vanishes numerically");
    return 1.0 / mirror;
  }
  const cplx z2s = zeta(2.0 * s);
  if (std::abs(z2s) < 1e-14) throw NumericError("phi: zeta(2s) vanishes numerically");
  // Lambda(2s-1)/Lambda(2s) = sqrt(pi) Gamma(s - 1/2)/Gamma(s) zeta(2s-1)/zeta(2s).
  return std::sqrt(kPi) * std::exp(clgamma(s - 0.5) - clgamma(s)) * zeta(2.0 * s - 1.0) / z2s;
}

int auto_trunc(double t, double y) {
  if (!(y > 0.0)) throw DomainError("auto_trunc needs y > 0");
  return static_cast<int>(std::ceil((std::abs(t) + 20.0) / (2.0 * kPi * y))) + 10;
}

cplx eisenstein_at(const Point& z0, cplx s, int trunc, bool reduce) {
  if (!(s.real() > 0.0 && s.real() < 5.0)) throw DomainError("eisenstein: Re s must lie in (0, 5)");
  const Point z = reduce ? reduce_to_fundamental(z0).point : z0;
  const double x = z.x();
  const double y = z.y();
  // With trunc = 0 the series runs at least auto_trunc terms and continues
  // while the terms are still above 1e-12 of the scale (small y needs this).
  const bool fixed = trunc > 0;
  const int N = fixed ? trunc : auto_trunc(s.imag(), y);
  const int limit = fixed ? N : 20 * N;

  const cplx constant = real_power(y, s) + phi(s) * real_power(y, 1.0 - s);
  const cplx coef = 2.0 / completed_zeta(2.0 * s) * std::sqrt(y);
  const cplx nu = s - 0.5;
  cplx series = 0.0;
  double scale = std::abs(constant);
  double last = 0.0;
  int n = 1;
  for (; n <= limit; ++n) {
    const double nd = n;
    const cplx a = coef * real_power(nd, nu) * divisor_sum(n, 1.0 - 2.0 * s) * kbessel(nu, 2.0 * kPi * nd * y);
    last = 2.0 * std::abs(a);
    scale += last;
    series += a * 2.0 * std::cos(2.0 * kPi * nd * x);
    if (n >= N && last <= 1e-12 * scale) break;
  }
  if (last > 1e-12 * scale) {
    std::ostringstream os;
    os << "eisenstein: " << std::min(n, limit) << " Fourier terms insufficient at y = " << y << " (last term " << last
       << ")";
    throw NumericError(os.str());
  }
  return constant + series;
}

cplx eisenstein(const Point& z, const EisensteinParams& p) {
  return eisenstein_at(z, cplx(0.5, p.t), p.trunc, p.reduce);
}

std::vector<cplx> eisenstein_row(double t, double y, std::span<const double> xs) {
  if (!(y > 0.0)) throw DomainError("eisenstein_row needs y > 0");
  const cplx s(0.5, t);
  const cplx constant = real_power(y, s) + phi(s) * real_power(y, 1.0 - s);
  const cplx coef = 2.0 / completed_zeta(2.0 * s) * std::sqrt(y);
  const cplx nu = s - 0.5;
  std::vector<cplx> a;
  double scale = std::abs(constant);
  const int N = auto_trunc(t, y);
  for (int n = 1; n <= 20 * N; ++n) {
    const double nd = n;
    a.push_back(coef * real_power(nd, nu) * divisor_sum(n, 1.0 - 2.0 * s) * kbessel(nu, 2.0 * kPi * nd * y));
    const double last = 2.0 * std::abs(a.back());
    scale += last;
    if (n >= N && last <= 1e-12 * scale) break;
  }
  if (2.0 * std::abs(a.back()) > 1e-12 * scale) throw NumericError("eisenstein_row: Fourier series did not settle");
  std::vector<cplx> out;
  out.reserve(xs.size());
  for (double x : xs) {
    cplx v = constant;
    for (std::size_t k = 0; k < a.size(); ++k) v += a[k] * 2.0 * std::cos(2.0 * kPi * static_cast<double>(k + 1) * x);
    out.push_back(v);
  }
  return out;
}

void MaassFormData::validate() const {
  if (!(t > 0.0) || !std::isfinite(t)) throw DataError("Maass form: t must be positive");
  if (lambda.empty() || std::abs(lambda[0] - 1.0) > 1e-12) throw DataError("Maass form: lambda(1) must be 1");
  if (lambda.size() >= 6 && std::abs(lambda[1] * lambda[2] - lambda[5]) > 1e-6) {
    throw DataError("Maass form: lambda(2) lambda(3) != lambda(6)");
  }
  if (!std::isfinite(rho1)) throw DataError("Maass form: rho1 must be finite");
}

namespace {

MaassFormData form_from_json(const nlohmann::json& j, std::size_t index) {
  auto fail = [&](const std::string& what) {
    std::ostringstream os;
    os << "Maass form #" << index << ": " << what;
    throw DataError(os.str());
  };
  if (!j.is_object()) fail("expected an object");
  MaassFormData f;
  try {
    if (!j.contains("t") || !j.at("t").is_number()) fail("missing numeric \"t\"");
    f.t = j.at("t").get<double>();
    const std::string parity = j.value("parity", std::string{});
    if (parity == "even") {
      f.parity = Parity::Even;
    } else if (parity == "odd") {
      f.parity = Parity::Odd;
    } else {
      fail("\"parity\" must be \"even\" or \"odd\"");
    }
    if (!j.contains("rho1") || !j.at("rho1").is_number()) fail("missing numeric \"rho1\"");
    f.rho1 = j.at("rho1").get<double>();
    if (!j.contains("lambda") || !j.at("lambda").is_array()) fail("missing array \"lambda\"");
    f.lambda = j.at("lambda").get<std::vector<double>>();
    f.label = j.value("label", std::string{});
  } catch (const nlohmann::json::exception& e) {
    fail(e.what());
  }
  try {
    f.validate();
  } catch (const DataError& e) {
    fail(e.what());
  }
  return f;
}

}  // namespace

std::vector<MaassFormData> parse_maass_forms(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("Maass data: ") + e.what());
  }
  if (doc.is_object() && doc.contains("forms")) doc = doc.at("forms");
  std::vector<MaassFormData> out;
  if (doc.is_array()) {
    for (std::size_t k = 0; k < doc.size(); ++k) out.push_back(form_from_json(doc[k], k));
  } else {
    out.push_back(form_from_json(doc, 0));
  }
  return out;
}

std::vector<MaassFormData> load_maass_forms(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_maass_forms(buf.str());
}

double maass_eval(const MaassFormData& form, const Point& z0, bool reduce) {
  const Point z = reduce ? reduce_to_fundamental(z0).point : z0;
  const double x = z.x();
  const double y = z.y();
  const int N = auto_trunc(form.t, y);
  if (static_cast<std::size_t>(N) > form.lambda.size()) {
    std::ostringstream os;
    os << "maass_eval: y = " << y << " needs " << N << " coefficients, data has " << form.lambda.size();
    throw DataError(os.str());
  }
  const double sy = std::sqrt(y);
  double acc = 0.0;
  for (int n = 1; n <= N; ++n) {
    const double lam = form.lambda[static_cast<std::size_t>(n - 1)];
    if (lam == 0.0) continue;
    const double arg = 2.0 * kPi * n * x;
    const double wave = form.parity == Parity::Even ? std::cos(arg) : std::sin(arg);
    acc += lam * kbessel_imag(form.t, 2.0 * kPi * n * y) * 2.0 * wave;
  }
  return form.rho1 * sy * acc;
}

cplx weyl_formula(const Discriminant& D, double t) {
  const cplx s(0.5, t);
  const double base = std::sqrt(static_cast<double>(D.abs())) / 2.0;
  return real_power(base, s) * dirichlet_l(s, D) * zeta(s) / zeta(2.0 * s);
}

WeylSumResult weyl_sum_eisenstein(const Discriminant& D, double t) {
  if (!(std::abs(t) >= 0.1)) throw DomainError("weyl_sum_eisenstein needs |t| >= 0.1");
  const HeegnerSet H = heegner_points(D);
  WeylSumResult r;
  r.D = D.value();
  r.t = t;
  r.h = H.class_number();
  for (const Point& z : H.points) r.direct += eisenstein(z, {t, 0, true});
  r.direct_weighted = H.unit_weight() * r.direct;
  r.formula = weyl_formula(D, t);
  r.residual = std::abs(r.direct - r.formula);
  r.residual_weighted = std::abs(r.direct_weighted - r.formula);
  r.units_ambiguous = H.units_ambiguous();
  return r;
}

double weyl_sum_cusp(const MaassFormData& form, const Discriminant& D) {
  const HeegnerSet H = heegner_points(D);
  double acc = 0.0;
  for (const Point& z : H.points) acc += maass_eval(form, z);
  return acc;
}

}  // namespace hyplab
