#include "hyplab/lab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "hyplab/automorphic.hpp"
#include "hyplab/counting.hpp"
#include "hyplab/errors.hpp"
#include "hyplab/kernels.hpp"
#include "hyplab/qforms.hpp"
#include "hyplab/specfun.hpp"

namespace hyplab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCountingMaxX = 1e6;
constexpr const char* kVersion = "hyplab 0.1.0";

const std::pair<ExperimentKind, const char*> kKindNames[] = {
    {ExperimentKind::ErrorScan, "error-scan"},   {ExperimentKind::EquiScan, "equi-scan"},
    {ExperimentKind::SupnormScan, "supnorm-scan"}, {ExperimentKind::ClassScan, "class-scan"},
    {ExperimentKind::WeylVerify, "weyl-verify"},
};

std::string error_status(const std::string& msg) { return "error: " + msg; }

std::vector<double> grid_from_json(const nlohmann::json& j, const char* key) {
  if (j.is_array()) return j.get<std::vector<double>>();
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (k != "lo" && k != "hi" && k != "n") throw UsageError(std::string(key) + ": unknown grid key \"" + k + "\"");
    }
    return log_grid(j.at("lo").get<double>(), j.at("hi").get<double>(), j.at("n").get<std::size_t>());
  }
  throw UsageError(std::string(key) + " must be a list or {lo, hi, n}");
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

nlohmann::json base_meta(const ExperimentConfig& cfg) {
  return {{"experiment", to_string(cfg.kind)}, {"version", kVersion}, {"config", config_to_json(cfg)}};
}

double as_number(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

std::string to_string(ExperimentKind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "unknown";
}

ExperimentKind parse_kind(const std::string& name) {
  for (const auto& [kind, n] : kKindNames) {
    if (name == n) return kind;
  }
  throw UsageError("unknown experiment kind \"" + name + "\"");
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw UsageError("format must be csv or json, got \"" + name + "\"");
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (n == 0 || !(lo > 0.0) || !(hi >= lo)) throw UsageError("log grid needs 0 < lo <= hi and n >= 1");
  std::vector<double> g(n);
  for (std::size_t k = 0; k < n; ++k) {
    g[k] = n == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(k) / static_cast<double>(n - 1));
  }
  g.back() = hi;
  return g;
}

void ExperimentConfig::validate() const {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw UsageError(what);
  };
  const bool has_D = !D_list.empty() || D_range.has_value();
  for (std::int64_t D : D_list) {
    if (!is_fundamental(D)) throw UsageError("D = " + std::to_string(D) + " is not a negative fundamental discriminant");
  }
  if (D_range) need(D_range->first <= D_range->second && D_range->second < 0, "D_range must be [lo, hi] with lo <= hi < 0");
  need(threads >= 0, "threads must be >= 0");
  switch (kind) {
    case ExperimentKind::ErrorScan:
      need(has_D, "error-scan needs discriminants");
      need(!X_grid.empty(), "error-scan needs a nonempty X grid");
      for (double X : X_grid) need(X >= 2.0 && X <= kCountingMaxX, "X grid values must lie in [2, 1e6]");
      need(delta_exponent > 0.0, "delta_exponent must be positive");
      break;
    case ExperimentKind::EquiScan:
      need(has_D, "equi-scan needs discriminants");
      need(!functions.empty(), "equi-scan needs at least one test function");
      for (const auto& f : functions) {
        need(f == "bump" || f == "constant" || f == "eisenstein-window", "unknown equi-scan function");
        if (f == "eisenstein-window") need(!t_grid.empty(), "eisenstein-window needs a t grid");
      }
      need(window_y > std::sqrt(3.0) / 2.0, "window_y must exceed sqrt(3)/2");
      break;
    case ExperimentKind::SupnormScan:
      need(!t_grid.empty(), "supnorm-scan needs a nonempty t grid");
      for (double t : t_grid) need(std::abs(t) <= 30.0, "supnorm-scan supports |t| <= 30");
      need(grid >= 2, "grid must be >= 2");
      need(supnorm_ymax > 1.0, "supnorm_ymax must exceed 1");
      break;
    case ExperimentKind::ClassScan:
      need(has_D, "class-scan needs discriminants");
      break;
    case ExperimentKind::WeylVerify:
      need(has_D, "weyl-verify needs discriminants");
      need(!t_grid.empty(), "weyl-verify needs a nonempty t grid");
      for (double t : t_grid) need(std::abs(t) >= 0.1, "weyl-verify needs |t| >= 0.1");
      break;
  }
}

std::vector<std::int64_t> ExperimentConfig::discriminants() const {
  std::vector<std::int64_t> out;
  if (!D_list.empty()) {
    out = D_list;
  } else if (D_range) {
    for (const Discriminant& D : fundamental_discriminants(D_range->first, D_range->second)) out.push_back(D.value());
    if (D_sample > 0 && D_sample < out.size()) {
      // One draw per log-spaced stratum of |D|, so the sample spans the range.
      // Positions come from the raw engine output (portable across standard libraries).
      std::mt19937_64 rng(seed);
      const double lo = std::log(static_cast<double>(-out.front()));
      const double hi = std::log(static_cast<double>(-out.back()) + 1.0);
      std::vector<std::int64_t> picked;
      std::vector<bool> used(out.size(), false);
      for (std::size_t k = 0; k < D_sample; ++k) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const double target = std::exp(lo + (hi - lo) * (static_cast<double>(k) + u) / static_cast<double>(D_sample));
        // Nearest unused discriminant to the target.
        std::size_t best = out.size();
        double dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < out.size(); ++i) {
          const double d = std::abs(static_cast<double>(-out[i]) - target);
          if (!used[i] && d < dist) {
            dist = d;
            best = i;
          }
        }
        used[best] = true;
        picked.push_back(out[best]);
      }
      out = std::move(picked);
    }
  }
  std::sort(out.begin(), out.end(), [](std::int64_t a, std::int64_t b) { return a > b; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig cfg) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "kind") {
        cfg.kind = parse_kind(v.get<std::string>());
      } else if (key == "D") {
        cfg.D_list = v.get<std::vector<std::int64_t>>();
      } else if (key == "D_range") {
        const auto r = v.get<std::vector<std::int64_t>>();
        if (r.size() != 2) throw UsageError("D_range must have two entries");
        cfg.D_range = std::make_pair(r[0], r[1]);
      } else if (key == "D_sample") {
        cfg.D_sample = v.get<std::size_t>();
      } else if (key == "X_grid") {
        cfg.X_grid = grid_from_json(v, "X_grid");
      } else if (key == "t_grid") {
        cfg.t_grid = v.get<std::vector<double>>();
      } else if (key == "delta_exponent") {
        cfg.delta_exponent = v.get<double>();
      } else if (key == "sandwich_points") {
        cfg.sandwich_points = v.get<std::size_t>();
      } else if (key == "functions") {
        cfg.functions = v.get<std::vector<std::string>>();
      } else if (key == "window_y") {
        cfg.window_y = v.get<double>();
      } else if (key == "grid") {
        cfg.grid = v.get<int>();
      } else if (key == "supnorm_ymax") {
        cfg.supnorm_ymax = v.get<double>();
      } else if (key == "out") {
        cfg.output = v.get<std::string>();
      } else if (key == "format") {
        cfg.format = parse_format(v.get<std::string>());
      } else if (key == "seed") {
        cfg.seed = v.get<std::uint64_t>();
      } else if (key == "threads") {
        cfg.threads = v.get<int>();
      } else {
        throw UsageError("unknown config key \"" + key + "\"");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("config " + path.string() + ": " + e.what());
  }
  return config_from_json(j, std::move(base));
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j = {
      {"kind", to_string(cfg.kind)},
      {"D", cfg.D_list},
      {"D_sample", cfg.D_sample},
      {"X_grid", cfg.X_grid},
      {"t_grid", cfg.t_grid},
      {"delta_exponent", cfg.delta_exponent},
      {"sandwich_points", cfg.sandwich_points},
      {"functions", cfg.functions},
      {"window_y", cfg.window_y},
      {"grid", cfg.grid},
      {"supnorm_ymax", cfg.supnorm_ymax},
      {"out", cfg.output.string()},
      {"format", cfg.format == OutputFormat::Csv ? "csv" : "json"},
      {"seed", cfg.seed},
      {"threads", cfg.threads},
  };
  if (cfg.D_range) j["D_range"] = {cfg.D_range->first, cfg.D_range->second};
  return j;
}

std::size_t ExperimentResult::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw UsageError("no column \"" + name + "\"");
  return static_cast<std::size_t>(it - columns.begin());
}

const Cell& ExperimentResult::at(std::size_t row, const std::string& name) const { return rows.at(row).at(column(name)); }

double ExperimentResult::number(std::size_t row, const std::string& name) const { return as_number(at(row, name)); }

std::vector<Row> parallel_rows(std::size_t n, int threads, const std::function<Row(std::size_t)>& make,
                               const std::function<Row(std::size_t, const std::string&)>& on_error) {
  std::vector<Row> rows(n);
  auto work = [&](std::size_t i) {
    try {
      rows[i] = make(i);
    } catch (const std::exception& e) {
      rows[i] = on_error(i, e.what());
    }
  };
  std::size_t workers = threads <= 0 ? std::max(1u, std::thread::hardware_concurrency()) : static_cast<std::size_t>(threads);
  workers = std::min(workers, std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) work(i);
    });
  }
  for (auto& th : pool) th.join();
  return rows;
}

double loglog_slope(const std::vector<double>& X, const std::vector<double>& e) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t k = 0; k < X.size() && k < e.size(); ++k) {
    if (!(std::abs(e[k]) > 0.0) || !std::isfinite(e[k]) || !(X[k] > 0.0)) continue;
    const double lx = std::log(X[k]);
    const double ly = std::log(std::abs(e[k]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  const double den = static_cast<double>(m) * sxx - sx * sx;
  if (m < 2 || !(std::abs(den) > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return (static_cast<double>(m) * sxy - sx * sy) / den;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  auto ranks = [n](const std::vector<double>& v) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n;) {
      std::size_t j = i;
      while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto ra = ranks(a);
  const auto rb = ranks(b);
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / static_cast<double>(n);
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / static_cast<double>(n);
  double num = 0, da = 0, db = 0;
  for (std::size_t k = 0; k < n; ++k) {
    num += (ra[k] - ma) * (rb[k] - mb);
    da += (ra[k] - ma) * (ra[k] - ma);
    db += (rb[k] - mb) * (rb[k] - mb);
  }
  return num / std::sqrt(da * db);
}

// ---------------------------------------------------------------- error-scan

ExperimentResult run_error_scan(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const auto Ds = cfg.discriminants();
  ExperimentResult res;
  res.columns = {"D", "h", "X", "e", "e_norm_1_2", "e_norm_7_12", "e_norm_2_3", "delta",
                 "main_minus", "main_plus", "sandwich_ok", "units_ambiguous", "status"};
  const std::size_t nX = cfg.X_grid.size();
  const std::size_t n = Ds.size() * nX;
  res.rows = parallel_rows(
      n, cfg.threads,
      [&](std::size_t i) -> Row {
        const Discriminant D(Ds[i / nX]);
        const double X = cfg.X_grid[i % nX];
        const std::size_t h = class_group(D).size();
        const double e = heegner_error_average(D, X);
        Row row{D.value(), static_cast<std::int64_t>(h), X, e, std::abs(e) / std::pow(X, 0.5),
                std::abs(e) / std::pow(X, 7.0 / 12.0), std::abs(e) / std::pow(X, 2.0 / 3.0)};
        // Smoothed-kernel bookkeeping: delta = X^{-a}, main terms h^+-(i/2)/vol.
        const double delta = std::pow(X, -cfg.delta_exponent);
        if (X > 2.0 && delta < radius_from_count(X)) {
          const double Y = radius_from_count(X);
          const auto grid = sandwich_grid(X, delta, cfg.sandwich_points);
          const SandwichReport rep = sandwich_check(X, delta, grid);
          row.insert(row.end(), {delta, sht_smoothed(Y, delta, Sign::Minus, {0.0, 0.5}).real() / volume_modular(),
                                 sht_smoothed(Y, delta, Sign::Plus, {0.0, 0.5}).real() / volume_modular(), rep.ok});
        } else {
          row.insert(row.end(), {delta, Cell{}, Cell{}, Cell{}});
        }
        row.push_back(D.units() != 2);
        row.push_back(std::string("ok"));
        return row;
      },
      [&](std::size_t i, const std::string& msg) -> Row {
        Row row(res.columns.size());
        row[0] = Ds[i / nX];
        row[2] = cfg.X_grid[i % nX];
        row.back() = error_status(msg);
        return row;
      });

  res.meta = base_meta(cfg);
  nlohmann::json slopes = nlohmann::json::object();
  for (std::size_t d = 0; d < Ds.size(); ++d) {
    std::vector<double> Xs, es;
    for (std::size_t k = 0; k < nX; ++k) {
      Xs.push_back(cfg.X_grid[k]);
      es.push_back(as_number(res.rows[d * nX + k][3]));
    }
    const double s = loglog_slope(Xs, es);
    slopes[std::to_string(Ds[d])] = std::isfinite(s) ? nlohmann::json(s) : nlohmann::json(nullptr);
  }
  res.meta["loglog_slope"] = slopes;
  res.meta["note"] =
      "Desk-scale X cannot reach the asymptotic regime; normalized columns |e|/X^a and fitted slopes are diagnostics, "
      "not exponent claims.";
  res.meta["elapsed_seconds"] = elapsed_since(t0);
  return res;
}

// ----------------------------------------------------------------- equi-scan

double equi_bump(double y) {
  constexpr double c = 2.0;
  constexpr double w = 0.9;
  const double u = (y - c) / w;
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

namespace {

// int_F g(x, y) dx dy / y^2 over F n {y <= ymax}. `row(y, xs)` returns g at
// the given abscissae; `panels_per_unit` sets the x resolution at height y.
template <class RowFn, class PanelFn>
double integrate_fundamental_domain(RowFn&& row, PanelFn&& panels_per_unit, double ymax) {
  using GL = boost::math::quadrature::gauss<double, 20>;
  const auto& nodes = GL::abscissa();
  const auto& weights = GL::weights();
  // Composite 20-point Gauss-Legendre in x on [a, b].
  auto x_integral = [&](double y, double a, double b) {
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) * panels_per_unit(y))));
    std::vector<double> xs;
    std::vector<double> ws;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = a + (p + 0.5) * h;
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        const double wk = weights[k] * 0.5 * h;
        xs.push_back(mid + 0.5 * h * nodes[k]);
        ws.push_back(wk);
        if (nodes[k] != 0.0) {
          xs.push_back(mid - 0.5 * h * nodes[k]);
          ws.push_back(wk);
        }
      }
    }
    const std::vector<double> g = row(y, xs);
    double acc = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) acc += ws[k] * g[k];
    return acc;
  };
  auto slice = [&](double y) {
    double v = 0.0;
    if (y >= 1.0) {
      v = x_integral(y, -0.5, 0.5);
    } else {
      const double c = std::sqrt(std::max(0.0, 1.0 - y * y));
      v = x_integral(y, -0.5, -c) + x_integral(y, c, 0.5);
    }
    return v / (y * y);
  };
  double err = 0.0;
  double total = 0.0;
  const double y0 = std::sqrt(3.0) / 2.0;
  boost::math::quadrature::tanh_sinh<double> ts;
  total += ts.integrate(slice, y0, std::min(1.0, ymax), 1e-10);
  if (ymax > 1.0) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    total += GK::integrate(slice, 1.0, ymax, 12, 1e-10, &err);
    if (!(err <= 1e-8 * std::max(1.0, std::abs(total)))) {
      std::ostringstream os;
      os << "fundamental-domain quadrature did not converge (error estimate " << err << ")";
      throw NumericError(os.str());
    }
  }
  return total;
}

}  // namespace

double fundamental_domain_mean(const std::string& function, double t, double window_y) {
  constexpr double kTruncation = 10.0;
  double integral = 0.0;
  if (function == "constant") {
    return 1.0;
  } else if (function == "bump") {
    integral = integrate_fundamental_domain(
        [](double y, const std::vector<double>& xs) { return std::vector<double>(xs.size(), equi_bump(y)); },
        [](double) { return 1.0; }, kTruncation);
  } else if (function == "eisenstein-window") {
    integral = integrate_fundamental_domain(
        [t](double y, const std::vector<double>& xs) {
          const auto E = eisenstein_row(t, y, xs);
          std::vector<double> g(E.size());
          for (std::size_t k = 0; k < E.size(); ++k) g[k] = std::norm(E[k]);
          return g;
        },
        [t](double y) { return 2.0 * auto_trunc(t, y) + 2.0; }, std::min(window_y, kTruncation));
  } else {
    throw UsageError("unknown test function \"" + function + "\"");
  }
  return integral / volume_modular();
}

ExperimentResult run_equi_scan(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const auto Ds = cfg.discriminants();

  struct Task {
    std::string function;
    double t;
    double mean;
  };
  std::vector<Task> tasks;
  for (const auto& f : cfg.functions) {
    if (f == "eisenstein-window") {
      for (double t : cfg.t_grid) tasks.push_back({f, t, fundamental_domain_mean(f, t, cfg.window_y)});
    } else {
      tasks.push_back({f, std::numeric_limits<double>::quiet_NaN(), fundamental_domain_mean(f, 0.0, cfg.window_y)});
    }
  }

  ExperimentResult res;
  res.columns = {"function", "t", "D", "h", "point_mean", "domain_mean", "discrepancy", "units_ambiguous", "status"};
  const std::size_t nD = Ds.size();
  res.rows = parallel_rows(
      tasks.size() * nD, cfg.threads,
      [&](std::size_t i) -> Row {
        const Task& task = tasks[i / nD];
        const HeegnerSet H = heegner_points(Discriminant(Ds[i % nD]));
        double acc = 0.0;
        for (const Point& z : H.points) {
          if (task.function == "constant") {
            acc += 1.0;
          } else if (task.function == "bump") {
            acc += equi_bump(z.y());
          } else if (z.y() <= cfg.window_y) {
            acc += std::norm(eisenstein(z, {task.t, 0, true}));
          }
        }
        const double pm = acc / static_cast<double>(H.class_number());
        const Cell tcell = std::isnan(task.t) ? Cell{} : Cell{task.t};
        return {task.function, tcell, H.D.value(), static_cast<std::int64_t>(H.class_number()), pm, task.mean,
                std::abs(pm - task.mean), H.units_ambiguous(), std::string("ok")};
      },
      [&](std::size_t i, const std::string& msg) -> Row {
        Row row(res.columns.size());
        row[0] = tasks[i / nD].function;
        row[2] = Ds[i % nD];
        row.back() = error_status(msg);
        return row;
      });

  res.meta = base_meta(cfg);
  nlohmann::json trend = nlohmann::json::object();
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    std::vector<double> absD, disc;
    for (std::size_t d = 0; d < nD; ++d) {
      const double v = as_number(res.rows[k * nD + d][6]);
      if (!std::isfinite(v)) continue;
      absD.push_back(static_cast<double>(-Ds[d]));
      disc.push_back(v);
    }
    std::string key = tasks[k].function;
    if (!std::isnan(tasks[k].t)) key += "@t=" + format_double(tasks[k].t);
    const double rho = spearman(absD, disc);
    trend[key] = std::isfinite(rho) ? nlohmann::json(rho) : nlohmann::json(nullptr);
  }
  res.meta["spearman_absD_vs_discrepancy"] = trend;
  res.meta["bump"] = "exp(1 - 1/(1 - ((y - 2)/0.9)^2)) of the reduced point, support 1.1 < y < 2.9";
  res.meta["window_note"] =
      "eisenstein-window uses |E(z,1/2+it)|^2 with a sharp cutoff y <= window_y, a surrogate for a smooth compactly "
      "supported weight; the two are not equivalent.";
  res.meta["elapsed_seconds"] = elapsed_since(t0);
  return res;
}

// -------------------------------------------------------------- supnorm-scan

ExperimentResult run_supnorm_scan(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentResult res;
  res.columns = {"t", "grid", "max_abs", "x_at_max", "y_at_max", "normalized", "status"};
  const int n = cfg.grid;
  const double y0 = std::sqrt(3.0) / 2.0;
  res.rows = parallel_rows(
      cfg.t_grid.size(), cfg.threads,
      [&](std::size_t i) -> Row {
        const double t = cfg.t_grid[i];
        std::vector<double> xs(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) xs[static_cast<std::size_t>(k)] = -0.5 + static_cast<double>(k) / (n - 1);
        double best = -1.0, bx = 0.0, by = 0.0;
        auto consider = [&](double x, double y, cplx v) {
          if (std::abs(v) > best) {
            best = std::abs(v);
            bx = x;
            by = y;
          }
        };
        for (int j = 0; j < n; ++j) {
          const double y = y0 + (cfg.supnorm_ymax - y0) * j / (n - 1);
          std::vector<double> inside;
          for (double x : xs) {
            if (x * x + y * y >= 1.0) inside.push_back(x);
          }
          if (inside.empty()) continue;
          const auto E = eisenstein_row(t, y, inside);
          for (std::size_t k = 0; k < inside.size(); ++k) consider(inside[k], y, E[k]);
        }
        // The arc |z| = 1 below the first grid row that reaches it.
        for (double x : xs) {
          const double y = std::sqrt(1.0 - x * x);
          consider(x, y, eisenstein(Point(x, y), {t, 0, false}));
        }
        return {t, static_cast<std::int64_t>(n), best, bx, by, best / std::pow(std::abs(t), 0.375), std::string("ok")};
      },
      [&](std::size_t i, const std::string& msg) -> Row {
        Row row(res.columns.size());
        row[0] = cfg.t_grid[i];
        row[1] = static_cast<std::int64_t>(n);
        row.back() = error_status(msg);
        return row;
      });
  res.meta = base_meta(cfg);
  res.meta["normalization"] = "max |E(z,1/2+it)| over the grid divided by |t|^(3/8)";
  res.meta["elapsed_seconds"] = elapsed_since(t0);
  return res;
}

// --------------------------------------------------------------- weyl-verify

ExperimentResult run_weyl_verify(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const auto Ds = cfg.discriminants();
  const std::size_t nt = cfg.t_grid.size();
  ExperimentResult res;
  res.columns = {"D", "t", "h", "direct_re", "direct_im", "formula_re", "formula_im", "residual",
                 "residual_weighted", "pass", "flag", "status"};
  constexpr double kTol = 1e-6;
  res.rows = parallel_rows(
      Ds.size() * nt, cfg.threads,
      [&](std::size_t i) -> Row {
        const WeylSumResult w = weyl_sum_eisenstein(Discriminant(Ds[i / nt]), cfg.t_grid[i % nt]);
        return {w.D,
                w.t,
                static_cast<std::int64_t>(w.h),
                w.direct.real(),
                w.direct.imag(),
                w.formula.real(),
                w.formula.imag(),
                w.residual,
                w.residual_weighted,
                w.residual < kTol,
                std::string(w.units_ambiguous ? "units-ambiguous" : ""),
                std::string("ok")};
      },
      [&](std::size_t i, const std::string& msg) -> Row {
        Row row(res.columns.size());
        row[0] = Ds[i / nt];
        row[1] = cfg.t_grid[i % nt];
        row.back() = error_status(msg);
        return row;
      });
  res.meta = base_meta(cfg);
  res.meta["tolerance"] = kTol;
  res.meta["units_note"] =
      "Rows flagged units-ambiguous (D = -3, -4) also report the residual with weight 2/w(D) per Heegner point.";
  res.meta["elapsed_seconds"] = elapsed_since(t0);
  return res;
}

// ---------------------------------------------------------------- class-scan

ExperimentResult run_class_scan(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const auto Ds = cfg.discriminants();
  ExperimentResult res;
  res.columns = {"D", "h", "h_formula", "L1", "match", "h_over_sqrtD", "status"};
  res.rows = parallel_rows(
      Ds.size(), cfg.threads,
      [&](std::size_t i) -> Row {
        const Discriminant D(Ds[i]);
        const auto h = static_cast<std::int64_t>(class_group(D).size());
        const double L1 = dirichlet_l(1.0, D).real();
        const double hf = class_number_formula(D, L1);
        return {D.value(), h, hf, L1, std::abs(hf - static_cast<double>(h)) < 1e-6,
                static_cast<double>(h) / std::sqrt(static_cast<double>(D.abs())), std::string("ok")};
      },
      [&](std::size_t i, const std::string& msg) -> Row {
        Row row(res.columns.size());
        row[0] = Ds[i];
        row.back() = error_status(msg);
        return row;
      });
  res.meta = base_meta(cfg);
  res.meta["elapsed_seconds"] = elapsed_since(t0);
  return res;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::ErrorScan:
      return run_error_scan(cfg);
    case ExperimentKind::EquiScan:
      return run_equi_scan(cfg);
    case ExperimentKind::SupnormScan:
      return run_supnorm_scan(cfg);
    case ExperimentKind::ClassScan:
      return run_class_scan(cfg);
    case ExperimentKind::WeylVerify:
      return run_weyl_verify(cfg);
  }
  throw UsageError("unknown experiment kind");
}

}  // namespace hyplab
