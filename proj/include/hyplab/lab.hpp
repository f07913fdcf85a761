#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace hyplab {

enum class ExperimentKind { ErrorScan, EquiScan, SupnormScan, ClassScan, WeylVerify };

std::string to_string(ExperimentKind k);
// Accepts "error-scan", "equi-scan", "supnorm-scan", "class-scan", "weyl-verify".
ExperimentKind parse_kind(const std::string& name);

enum class OutputFormat { Csv, Json };
OutputFormat parse_format(const std::string& name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::ErrorScan;

  // Discriminants: the explicit list if nonempty, else every fundamental D
  // in D_range, optionally thinned to D_sample values: one seeded draw per
  // log-spaced stratum of |D|.
  std::vector<std::int64_t> D_list;
  std::optional<std::pair<std::int64_t, std::int64_t>> D_range;
  std::size_t D_sample = 0;

  std::vector<double> X_grid;
  std::vector<double> t_grid;

  // error-scan: the smoothing width delta = X^{-delta_exponent} of k^+- is
  // recorded with the pointwise sandwich check for every X.
  double delta_exponent = 1.0 / 3.0;
  std::size_t sandwich_points = 400;

  // equi-scan test functions: "bump", "constant", "eisenstein-window".
  std::vector<std::string> functions{"bump"};
  double window_y = 3.0;  // sharp cutoff y <= window_y for |E|^2

  // supnorm-scan grid over the fundamental domain with y <= supnorm_ymax.
  int grid = 50;
  double supnorm_ymax = 3.0;

  std::filesystem::path output;
  OutputFormat format = OutputFormat::Csv;
  std::uint64_t seed = 1;
  int threads = 1;

  // Throws UsageError for empty grids, X < 2, non-fundamental D and the like.
  void validate() const;
  // The discriminant list actually scanned, ascending by |D|.
  std::vector<std::int64_t> discriminants() const;
};

// Unknown keys are rejected. Grids are lists or {"lo", "hi", "n"} (log-spaced).
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});
nlohmann::json config_to_json(const ExperimentConfig& cfg);

// n values log-spaced between lo and hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

using Cell = std::variant<std::monostate, std::int64_t, double, std::string, bool>;
using Row = std::vector<Cell>;

struct ExperimentResult {
  std::vector<std::string> columns;
  std::vector<Row> rows;
  nlohmann::json meta = nlohmann::json::object();

  std::size_t column(const std::string& name) const;
  const Cell& at(std::size_t row, const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

// Evaluates rows 0..n-1 on up to `threads` workers and returns them in index
// order. A row that throws is replaced by on_error(index, message).
std::vector<Row> parallel_rows(std::size_t n, int threads, const std::function<Row(std::size_t)>& make,
                               const std::function<Row(std::size_t, const std::string&)>& on_error);

ExperimentResult run_error_scan(const ExperimentConfig& cfg);
ExperimentResult run_equi_scan(const ExperimentConfig& cfg);
ExperimentResult run_supnorm_scan(const ExperimentConfig& cfg);
ExperimentResult run_weyl_verify(const ExperimentConfig& cfg);
ExperimentResult run_class_scan(const ExperimentConfig& cfg);
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Built-in equidistribution test function: a smooth bump in the height of
// the reduced point, supported in 1.1 < y < 2.9 (a function on the quotient).
double equi_bump(double y);
// (1/vol) int_F f dmu for the named test function, by nested adaptive
// quadrature over F truncated at y = 10 (exact for compact support).
double fundamental_domain_mean(const std::string& function, double t, double window_y);

// Least-squares slope of log|e| against log X over points with |e| > 0; NaN if fewer than two.
double loglog_slope(const std::vector<double>& X, const std::vector<double>& e);
// Spearman rank correlation (average ranks for ties).
double spearman(const std::vector<double>& a, const std::vector<double>& b);

// RFC 4180 CSV, 17 significant digits, '.' decimal.
void write_csv(std::ostream& os, const ExperimentResult& r);
// {"meta": {...}, "rows": [{column: value, ...}, ...]}; non-finite numbers become null.
nlohmann::json to_json(const ExperimentResult& r);
void write_json(std::ostream& os, const ExperimentResult& r);
// Writes to path; for CSV the metadata goes to "<path>.meta.json" so the
// table itself is byte-identical across reruns. Throws DataError on I/O failure.
void emit(const ExperimentResult& r, OutputFormat format, const std::filesystem::path& path);
std::string format_double(double v);

}  // namespace hyplab
