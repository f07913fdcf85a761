#include <cmath>
#include <cstdio>
#include <fstream>

#include "hyplab/errors.hpp"
#include "hyplab/lab.hpp"

namespace hyplab {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<V, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<V, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<V, bool>) {
          return v ? "true" : "false";
        } else {
          return v;
        }
      },
      c);
}

nlohmann::json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<V, double>) {
          if (!std::isfinite(v)) return nullptr;
          return v;
        } else {
          return v;
        }
      },
      c);
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const ExperimentResult& r) {
  for (std::size_t k = 0; k < r.columns.size(); ++k) os << (k ? "," : "") << csv_field(r.columns[k]);
  os << "\r\n";
  for (const Row& row : r.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << csv_field(cell_text(row[k]));
    os << "\r\n";
  }
}

nlohmann::json to_json(const ExperimentResult& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const Row& row : r.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t k = 0; k < row.size() && k < r.columns.size(); ++k) obj[r.columns[k]] = cell_json(row[k]);
    rows.push_back(std::move(obj));
  }
  return {{"meta", r.meta}, {"rows", std::move(rows)}};
}

void write_json(std::ostream& os, const ExperimentResult& r) { os << to_json(r).dump(2) << '\n'; }

void emit(const ExperimentResult& r, OutputFormat format, const std::filesystem::path& path) {
  auto open = [](const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw DataError("cannot write " + p.string());
    return out;
  };
  {
    std::ofstream out = open(path);
    if (format == OutputFormat::Csv) {
      write_csv(out, r);
    } else {
      write_json(out, r);
    }
    if (!out) throw DataError("write failed: " + path.string());
  }
  if (format == OutputFormat::Csv) {
    std::ofstream meta = open(path.string() + ".meta.json");
    meta << r.meta.dump(2) << '\n';
    if (!meta) throw DataError("write failed: " + path.string() + ".meta.json");
  }
}

}  // namespace hyplab
