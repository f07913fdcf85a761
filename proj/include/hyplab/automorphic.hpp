#pragma once

#include <complex>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "hyplab/halfplane.hpp"
#include "hyplab/qforms.hpp"

namespace hyplab {

using cplx = std::complex<double>;

// Scattering coefficient phi(s) = Lambda(2s - 1) / Lambda(2s) of PSL(2,Z),
// Lambda(s) = pi^{-s/2} Gamma(s/2) zeta(s). Throws PoleError at s = 1/2, 1
// and NumericError when zeta(2s) is numerically zero.
cplx phi(cplx s);

// Number of Fourier terms kept at height y: ceil((|t| + 20) / (2 pi y)) + 10.
int auto_trunc(double t, double y);

struct EisensteinParams {
  double t = 0.0;     // s = 1/2 + it
  int trunc = 0;      // Fourier terms; 0 selects auto_trunc at the evaluation height
  bool reduce = true; // move z into the fundamental domain first
};

// E(z, s) = y^s + phi(s) y^{1-s}
//         + 2/Lambda(2s) sqrt(y) sum_{n>=1} n^{s-1/2} sigma_{1-2s}(n) K_{s-1/2}(2 pi n y) 2 cos(2 pi n x).
// Throws NumericError when the last kept term exceeds 1e-12 of the series scale.
cplx eisenstein(const Point& z, const EisensteinParams& p);
// General s with Re s in (0, 5), s != 1/2, 1.
cplx eisenstein_at(const Point& z, cplx s, int trunc = 0, bool reduce = true);

// E(x_k + iy, 1/2 + it) for many x at one height, sharing the Fourier
// coefficients and K-Bessel values. No reduction; y > 0.
std::vector<cplx> eisenstein_row(double t, double y, std::span<const double> xs);

enum class Parity { Even, Odd };

// A Hecke-Maass cusp form given by its spectral parameter and Hecke
// eigenvalues; rho(n) = rho1 lambda(n), rho(-n) = +-rho(n) by parity.
struct MaassFormData {
  double t = 0.0;
  Parity parity = Parity::Even;
  double rho1 = 1.0;
  std::vector<double> lambda;  // lambda[0] = lambda(1) = 1
  std::string label;

  double eigenvalue() const { return 0.25 + t * t; }
  // Throws DataError unless t > 0, lambda(1) = 1 and lambda(2) lambda(3) = lambda(6) to 1e-6.
  void validate() const;
};

// JSON: one object {"t", "parity", "rho1", "lambda"} or an array of them,
// optionally wrapped as {"forms": [...]}. Throws DataError on malformed input.
std::vector<MaassFormData> parse_maass_forms(const std::string& text);
std::vector<MaassFormData> load_maass_forms(const std::filesystem::path& path);

// u(z) = rho1 sum_{n>=1} lambda(n) sqrt(y) K_it(2 pi n y) * 2cos(2 pi n x)  (even)
//                                                      * 2sin(2 pi n x)  (odd).
// Throws DataError when auto_trunc(t, y) exceeds the available coefficients.
double maass_eval(const MaassFormData& form, const Point& z, bool reduce = true);

struct WeylSumResult {
  std::int64_t D = 0;
  double t = 0.0;
  std::size_t h = 0;
  cplx direct;           // sum over Heegner points of E(z, 1/2 + it), unweighted
  cplx direct_weighted;  // the same with weight 2/w(D) per point
  cplx formula;          // (sqrt|D|/2)^s L(s, chi_D) zeta(s) / zeta(2s)
  double residual = 0.0;           // |direct - formula|
  double residual_weighted = 0.0;  // |direct_weighted - formula|
  bool units_ambiguous = false;    // D = -3 or -4
};

// Throws DomainError for |t| < 0.1.
WeylSumResult weyl_sum_eisenstein(const Discriminant& D, double t);
cplx weyl_formula(const Discriminant& D, double t);

// sum over the Heegner points of D of u(z).
double weyl_sum_cusp(const MaassFormData& form, const Discriminant& D);

}  // namespace hyplab
