#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "hyplab/halfplane.hpp"
#include "hyplab/qforms.hpp"

namespace hyplab {

// N(z, w, X) = #{gamma in PSL(2,Z) : 4 u(gamma z, w) + 2 <= X}.
struct CountQuery {
  Point z;
  Point w;
  double X;
  // When set, z == w == form.root() and the count uses exact integer
  // comparisons (the Frobenius norm is rational at CM points).
  std::optional<QuadForm> form;

  static CountQuery heegner(const QuadForm& f, double X) { return {f.root(), f.root(), X, f}; }
};

struct CountResult {
  std::int64_t count = 0;
  double main_term = 0.0;  // pi X / vol = 3X
  double error = 0.0;      // count - main_term
  bool exact = false;      // all boundary decisions made in integer arithmetic
  // Some accepted/rejected gamma had 4u + 2 within rounding of X (float path only).
  bool boundary_ambiguous = false;
  std::int64_t rows = 0;   // bottom rows (c, d) visited
};

// vol(Gamma \ H) = pi / 3.
double volume_modular();
double main_term(double X);

CountResult count(const CountQuery& q);

// Exhaustive enumeration of sign-normalized integer matrices with entries up
// to ceil(|g_w|_F sqrt(X) |g_z^{-1}|_F). Independent of count(); throws
// DomainError beyond X = 1e4.
std::int64_t brute_force_count(const CountQuery& q);
inline constexpr double kBruteForceMaxX = 1e4;

// (1/h(D)) sum_z f(z) (N(z, z, X) - 3X) over the Heegner points of D, with
// f = 1 when weights is empty (otherwise one weight per point, in class_group order).
double heegner_error_average(const Discriminant& D, double X, std::span<const double> weights = {});

}  // namespace hyplab
