#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <vector>

namespace hyplab {

using cplx = std::complex<double>;

// Spectral parameters t_j > 0, strictly increasing.
struct EigenvalueList {
  std::vector<double> values;
  std::string source;
  std::vector<std::string> warnings;  // duplicates dropped while loading

  std::size_t size() const { return values.size(); }
  double max() const { return values.empty() ? 0.0 : values.back(); }
};

// Plain text, one decimal per line; '#' starts a comment, blank lines are
// skipped. Throws DataError (with the line number) on malformed or
// non-positive entries. Exact duplicates are dropped with a warning.
EigenvalueList parse_eigenvalues(std::istream& in, std::string source = {});
EigenvalueList load_eigenvalues(const std::filesystem::path& path);
// Sorts, deduplicates and validates values given in memory.
EigenvalueList make_eigenvalue_list(std::vector<double> values, std::string source = {});

// #{t_j <= T}.
std::size_t weyl_count(const EigenvalueList& E, double T);

// S(T, X) = sum_{t_j <= T} X^{i t_j}, summed in ascending t_j with
// Neumaier compensation on each component. The terms are split into fixed
// chunks of kSpectralChunk whose partial sums are combined in order, so the
// result is bit-identical for every thread count. Throws DomainError for X <= 0.
cplx spectral_exp_sum(const EigenvalueList& E, double T, double X, int threads = 1);
inline constexpr std::size_t kSpectralChunk = 4096;

struct WeylDeficit {
  double deficit = 0.0;     // #{t_j <= T} - T^2/12
  bool extrapolated = false;  // T beyond the largest listed t_j
};
WeylDeficit weyl_law_deficit(const EigenvalueList& E, double T);

struct ShapeRow {
  double X = 0.0;
  double T = 0.0;
  std::size_t count = 0;
  double abs_sum = 0.0;
  double luo_sarnak = 0.0;  // |S| / (X^{1/8} T^{5/4})
  double per_count = 0.0;   // |S| / T
};

// One row per (X, T), X outer, both grids in the given order.
std::vector<ShapeRow> luo_sarnak_shape(const EigenvalueList& E, std::span<const double> X_grid,
                                       std::span<const double> T_grid);

}  // namespace hyplab
