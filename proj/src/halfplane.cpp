#include "hyplab/halfplane.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

namespace hyplab {

Point::Point(double x, double y) : x_(x), y_(y) {
  if (!std::isfinite(x) || !std::isfinite(y) || !(y > 0.0)) {
    std::ostringstream os;
    os << "point must satisfy y > 0, got (" << x << ", " << y << ")";
    throw DomainError(os.str());
  }
}

std::ostream& operator<<(std::ostream& os, const Point& z) {
  return os << format_point(z);
}

std::string format_point(const Point& z) {
  std::ostringstream os;
  os.precision(17);
  os << z.x() << (std::signbit(z.y()) ? "-" : "+") << std::abs(z.y()) << "i";
  return os.str();
}

cplx parse_complex(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ') s.push_back(ch);
  }
  auto fail = [&]() -> cplx {
    throw UsageError("cannot parse complex number '" + std::string(text) + "', expected a, bi or a+bi");
  };
  auto number = [&](const std::string& part) {
    std::size_t used = 0;
    const double v = std::stod(part, &used);
    if (used != part.size()) fail();
    return v;
  };
  if (s.empty()) return fail();
  try {
    if (s.back() != 'i') return number(s);
    s.pop_back();
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
      if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
        split = k;
        break;
      }
    }
    double x = 0.0;
    std::string ypart = s;
    if (split != std::string::npos) {
      x = number(s.substr(0, split));
      ypart = s.substr(split);
    }
    double y = 0.0;
    if (ypart.empty() || ypart == "+") {
      y = 1.0;
    } else if (ypart == "-") {
      y = -1.0;
    } else {
      y = number(ypart);
    }
    return {x, y};
  } catch (const std::logic_error&) {
    return fail();
  }
}

Point parse_point(std::string_view text) {
  const cplx z = parse_complex(text);
  if (!(z.imag() > 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw UsageError("point '" + std::string(text) + "' must have positive finite imaginary part");
  }
  return Point(z.real(), z.imag());
}

ModularMatrix::ModularMatrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
    : a_(a), b_(b), c_(c), d_(d) {
  if (a * d - b * c != 1) {
    std::ostringstream os;
    os << "matrix (" << a << ", " << b << ", " << c << ", " << d << ") has determinant "
       << a * d - b * c;
    throw DomainError(os.str());
  }
  if (c_ < 0 || (c_ == 0 && d_ < 0)) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
    d_ = -d_;
  }
}

ModularMatrix operator*(const ModularMatrix& l, const ModularMatrix& r) {
  return {l.a_ * r.a_ + l.b_ * r.c_, l.a_ * r.b_ + l.b_ * r.d_,
          l.c_ * r.a_ + l.d_ * r.c_, l.c_ * r.b_ + l.d_ * r.d_};
}

std::ostream& operator<<(std::ostream& os, const ModularMatrix& m) {
  return os << "[" << m.a() << ", " << m.b() << "; " << m.c() << ", " << m.d() << "]";
}

Point apply(const ModularMatrix& m, const Point& z) {
  const cplx w = z.as_complex();
  const cplx den = double(m.c()) * w + double(m.d());
  const cplx num = double(m.a()) * w + double(m.b());
  // Imaginary part from the exact identity Im(gz) = y / |cz + d|^2.
  return Point((num / den).real(), z.y() / std::norm(den));
}

double ppinv(const Point& z, const Point& w) {
  const double dx = z.x() - w.x();
  const double dy = z.y() - w.y();
  return (dx * dx + dy * dy) / (4.0 * z.y() * w.y());
}

double distance(const Point& z, const Point& w) {
  // arcosh(1 + 2u) = 2 asinh(sqrt(u)), stable for small u.
  return 2.0 * std::asinh(std::sqrt(ppinv(z, w)));
}

bool in_fundamental_domain(const Point& z, double tol) {
  return std::abs(z.x()) <= 0.5 + tol && z.x() * z.x() + z.y() * z.y() >= 1.0 - tol;
}

Reduction reduce_to_fundamental(const Point& z0) {
  double x = z0.x();
  double y = z0.y();
  ModularMatrix m;
  for (int iter = 0; iter < 100000; ++iter) {
    const double shift = std::floor(x + 0.5);
    if (shift != 0.0) {
      const auto n = static_cast<std::int64_t>(shift);
      x -= shift;
      m = ModularMatrix::T(-n) * m;
    }
    const double r2 = x * x + y * y;
    if (r2 < 1.0 - kBoundaryTol) {
      x = -x / r2;
      y = y / r2;
      m = ModularMatrix::S() * m;
      continue;
    }
    break;
  }
  // Canonical representatives on the boundary.
  if (std::abs(x - 0.5) <= kBoundaryTol) {
    x -= 1.0;
    m = ModularMatrix::T(-1) * m;
  }
  if (std::abs(x * x + y * y - 1.0) <= kBoundaryTol && x > kBoundaryTol) {
    x = -x;
    m = ModularMatrix::S() * m;
  }
  // Recompute from the matrix so the returned pair is consistent.
  const Point exact = apply(m, z0);
  return {exact, m};
}

}  // namespace hyplab
