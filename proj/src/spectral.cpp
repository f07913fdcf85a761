#include "hyplab/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "hyplab/errors.hpp"

namespace hyplab {

namespace {

// Neumaier's variant of Kahan summation.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

void finish(EigenvalueList& E) {
  std::sort(E.values.begin(), E.values.end());
  std::vector<double> unique;
  unique.reserve(E.values.size());
  for (double v : E.values) {
    if (!unique.empty() && unique.back() == v) {
      std::ostringstream os;
      os.precision(17);
      os << "duplicate eigenvalue " << v << " dropped";
      E.warnings.push_back(os.str());
      continue;
    }
    unique.push_back(v);
  }
  E.values = std::move(unique);
}

}  // namespace

EigenvalueList parse_eigenvalues(std::istream& in, std::string source) {
  EigenvalueList E;
  E.source = std::move(source);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    double v = 0.0;
    const char* first = body.data();
    const char* last = first + body.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
      std::ostringstream os;
      os << E.source << (E.source.empty() ? "" : ":") << "line " << lineno << ": cannot parse \"" << body << "\"";
      throw DataError(os.str());
    }
    if (!(v > 0.0)) {
      std::ostringstream os;
      os << E.source << (E.source.empty() ? "" : ":") << "line " << lineno << ": eigenvalue " << body
         << " is not positive";
      throw DataError(os.str());
    }
    E.values.push_back(v);
  }
  finish(E);
  return E;
}

EigenvalueList load_eigenvalues(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return parse_eigenvalues(in, path.string());
}

EigenvalueList make_eigenvalue_list(std::vector<double> values, std::string source) {
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DataError("eigenvalues must be finite and positive");
  }
  EigenvalueList E;
  E.values = std::move(values);
  E.source = std::move(source);
  finish(E);
  return E;
}

std::size_t weyl_count(const EigenvalueList& E, double T) {
  return static_cast<std::size_t>(std::upper_bound(E.values.begin(), E.values.end(), T) - E.values.begin());
}

cplx spectral_exp_sum(const EigenvalueList& E, double T, double X, int threads) {
  if (!(X > 0.0)) throw DomainError("spectral_exp_sum needs X > 0");
  const double L = std::log(X);
  const std::size_t n = weyl_count(E, T);
  const std::size_t chunks = (n + kSpectralChunk - 1) / kSpectralChunk;
  std::vector<CompensatedSum> re(chunks), im(chunks);
  auto run_chunk = [&](std::size_t c) {
    const std::size_t end = std::min(n, (c + 1) * kSpectralChunk);
    for (std::size_t j = c * kSpectralChunk; j < end; ++j) {
      const double phase = E.values[j] * L;
      re[c].add(std::cos(phase));
      im[c].add(std::sin(phase));
    }
  };
  const std::size_t workers = std::min<std::size_t>(chunks, threads > 1 ? static_cast<std::size_t>(threads) : 1);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < chunks; c = next++) run_chunk(c);
      });
    }
    for (auto& th : pool) th.join();
  }
  CompensatedSum total_re, total_im;
  for (std::size_t c = 0; c < chunks; ++c) {
    total_re.add(re[c].sum);
    total_re.add(re[c].carry);
    total_im.add(im[c].sum);
    total_im.add(im[c].carry);
  }
  return {total_re.value(), total_im.value()};
}

WeylDeficit weyl_law_deficit(const EigenvalueList& E, double T) {
  WeylDeficit w;
  w.deficit = static_cast<double>(weyl_count(E, T)) - T * T / 12.0;
  w.extrapolated = E.values.empty() || T > E.max();
  return w;
}

std::vector<ShapeRow> luo_sarnak_shape(const EigenvalueList& E, std::span<const double> X_grid,
                                       std::span<const double> T_grid) {
  if (X_grid.empty() || T_grid.empty()) throw UsageError("luo_sarnak_shape needs nonempty grids");
  std::vector<ShapeRow> rows;
  rows.reserve(X_grid.size() * T_grid.size());
  for (double X : X_grid) {
    for (double T : T_grid) {
      if (!(T > 0.0)) throw DomainError("luo_sarnak_shape needs T > 0");
      ShapeRow r;
      r.X = X;
      r.T = T;
      r.count = weyl_count(E, T);
      r.abs_sum = std::abs(spectral_exp_sum(E, T, X));
      r.luo_sarnak = r.abs_sum / (std::pow(X, 0.125) * std::pow(T, 1.25));
      r.per_count = r.abs_sum / T;
      rows.push_back(r);
    }
  }
  return rows;
}

}  // namespace hyplab
