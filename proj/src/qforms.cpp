#include "hyplab/qforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>
#include <tuple>

namespace hyplab {

namespace {

bool squarefree(std::int64_t n) {
  n = n < 0 ? -n : n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
    if (n % p == 0) n /= p;
  }
  return true;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t isqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

bool is_fundamental(std::int64_t D) {
  if (D >= 0) return false;
  const std::int64_t m = ((D % 4) + 4) % 4;
  if (m == 1) return squarefree(D);
  if (m == 0) {
    const std::int64_t q = D / 4;
    const std::int64_t r = ((q % 4) + 4) % 4;
    return (r == 2 || r == 3) && squarefree(q);
  }
  return false;
}

Discriminant::Discriminant(std::int64_t D) : D_(D) {
  if (!is_fundamental(D)) {
    throw DomainError("not a negative fundamental discriminant: " + std::to_string(D));
  }
}

bool QuadForm::is_reduced() const {
  if (a <= 0 || discriminant() >= 0) return false;
  if (std::abs(b) > a || a > c) return false;
  if ((std::abs(b) == a || a == c) && b < 0) return false;
  return true;
}

Point QuadForm::root() const {
  const double sq = std::sqrt(static_cast<double>(-discriminant()));
  return Point(static_cast<double>(-b) / (2.0 * static_cast<double>(a)), sq / (2.0 * static_cast<double>(a)));
}

std::ostream& operator<<(std::ostream& os, const QuadForm& f) {
  return os << "(" << f.a << ", " << f.b << ", " << f.c << ")";
}

QuadForm reduce_form(const QuadForm& f) {
  const std::int64_t D = f.discriminant();
  if (D >= 0 || f.a <= 0) {
    throw DomainError("reduce_form needs a positive definite form (a > 0, b^2 - 4ac < 0)");
  }
  std::int64_t a = f.a, b = f.b, c = f.c;
  auto normalize = [&] {
    // b into (-a, a]
    const std::int64_t k = floor_div(a - b, 2 * a);
    b += 2 * a * k;
    c = (b * b - D) / (4 * a);
  };
  normalize();
  while (a > c) {
    std::swap(a, c);
    b = -b;
    normalize();
  }
  if (a == c && b < 0) b = -b;
  return {a, b, c};
}

std::vector<QuadForm> class_group(const Discriminant& disc) {
  const std::int64_t D = disc.value();
  const std::int64_t N = -D;
  std::vector<QuadForm> out;
  const std::int64_t bmax = isqrt(N / 3);
  for (std::int64_t b = -bmax; b <= bmax; ++b) {
    if (((b - D) % 2) != 0) continue;
    const std::int64_t ac = (b * b - D) / 4;
    for (std::int64_t a = std::max<std::int64_t>(std::abs(b), 1); a * a <= ac; ++a) {
      if (ac % a != 0) continue;
      const QuadForm f{a, b, ac / a};
      if (f.is_reduced()) out.push_back(f);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const QuadForm& l, const QuadForm& r) { return std::tie(l.a, l.b) < std::tie(r.a, r.b); });
  return out;
}

HeegnerSet heegner_points(const Discriminant& D) {
  HeegnerSet set{D, class_group(D), {}};
  set.points.reserve(set.forms.size());
  for (const auto& f : set.forms) set.points.push_back(f.root());
  return set;
}

int kronecker(std::int64_t a, std::int64_t b) {
  // Cohen, Algorithm 1.4.10.
  static constexpr int tab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};
  if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (a % 2 == 0 && b % 2 == 0) return 0;
  int v = 0;
  while (b % 2 == 0) {
    ++v;
    b /= 2;
  }
  int k = 1;
  if (v % 2 == 1) k = tab2[((a % 8) + 8) % 8];
  if (b < 0) {
    b = -b;
    if (a < 0) k = -k;
  }
  while (true) {
    // b odd and positive here
    if (a == 0) return b > 1 ? 0 : k;
    v = 0;
    while (a % 2 == 0) {
      ++v;
      a /= 2;
    }
    if (v % 2 == 1) k *= tab2[((b % 8) + 8) % 8];
    // reciprocity; two's complement makes a & 2 test a = 3 mod 4 for negative a too
    if (a & b & 2) k = -k;
    const std::int64_t r = a < 0 ? -a : a;
    a = b % r;
    b = r;
  }
}

CharacterTable::CharacterTable(const Discriminant& D) : D_(D) {
  const std::int64_t n = D.abs();
  table_.resize(static_cast<std::size_t>(n));
  for (std::int64_t r = 0; r < n; ++r) table_[static_cast<std::size_t>(r)] = kronecker(D.value(), r);
}

int CharacterTable::operator()(std::int64_t n) const {
  const std::int64_t m = modulus();
  return table_[static_cast<std::size_t>(((n % m) + m) % m)];
}

double class_number_formula(const Discriminant& D, double L1) {
  return D.units() * std::sqrt(static_cast<double>(D.abs())) * L1 / (2.0 * std::numbers::pi);
}

std::vector<Discriminant> fundamental_discriminants(std::int64_t lo, std::int64_t hi) {
  std::vector<Discriminant> out;
  for (std::int64_t D = std::min<std::int64_t>(hi, -1); D >= lo; --D) {
    if (is_fundamental(D)) out.emplace_back(D);
  }
  return out;
}

}  // namespace hyplab
