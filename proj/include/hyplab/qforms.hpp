#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hyplab/halfplane.hpp"

namespace hyplab {

bool is_fundamental(std::int64_t D);

// A negative fundamental discriminant.
class Discriminant {
public:
  // Throws DomainError unless D < 0 is fundamental.
  explicit Discriminant(std::int64_t D);
  std::int64_t value() const { return D_; }
  std::int64_t abs() const { return -D_; }
  // Number of units of the quadratic order: 6, 4 or 2.
  int units() const { return D_ == -3 ? 6 : D_ == -4 ? 4 : 2; }
  friend bool operator==(const Discriminant&, const Discriminant&) = default;

private:
  std::int64_t D_;
};

// Positive definite binary quadratic form a x^2 + b xy + c y^2.
struct QuadForm {
  std::int64_t a = 0, b = 0, c = 0;

  std::int64_t discriminant() const { return b * b - 4 * a * c; }
  bool is_reduced() const;
  // The root (-b + i sqrt|D|) / (2a) in the upper half-plane.
  Point root() const;

  friend bool operator==(const QuadForm&, const QuadForm&) = default;
  friend auto operator<=>(const QuadForm&, const QuadForm&) = default;
};

std::ostream& operator<<(std::ostream& os, const QuadForm& f);

// Gauss reduction under PSL(2,Z). Throws DomainError unless b^2 - 4ac < 0, a > 0.
QuadForm reduce_form(const QuadForm& f);

// All reduced forms of discriminant D sorted by (a, b); its size is h(D).
std::vector<QuadForm> class_group(const Discriminant& D);

struct HeegnerSet {
  Discriminant D;
  std::vector<QuadForm> forms;
  std::vector<Point> points;

  std::size_t class_number() const { return forms.size(); }
  // Weight 2/w(D) per point: 1/3 for D = -3, 1/2 for D = -4, 1 otherwise.
  double unit_weight() const { return 2.0 / D.units(); }
  bool units_ambiguous() const { return D.value() == -3 || D.value() == -4; }
};

HeegnerSet heegner_points(const Discriminant& D);

// Kronecker symbol (D | n) for any integers D, n.
int kronecker(std::int64_t D, std::int64_t n);

// chi_D(r) for r = 0 .. |D| - 1, built once and shared read-only.
class CharacterTable {
public:
  explicit CharacterTable(const Discriminant& D);
  const Discriminant& discriminant() const { return D_; }
  std::int64_t modulus() const { return D_.abs(); }
  int operator()(std::int64_t n) const;
  const std::vector<int>& values() const { return table_; }

private:
  Discriminant D_;
  std::vector<int> table_;
};

// w(D) sqrt|D| L(1, chi_D) / (2 pi); equals h(D).
double class_number_formula(const Discriminant& D, double L1);

// Fundamental discriminants in [lo, hi] (both negative), ascending by |D|.
std::vector<Discriminant> fundamental_discriminants(std::int64_t lo, std::int64_t hi);

}  // namespace hyplab
