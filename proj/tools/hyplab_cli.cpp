// hyplab command-line front end.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyplab/automorphic.hpp"
#include "hyplab/counting.hpp"
#include "hyplab/errors.hpp"
#include "hyplab/halfplane.hpp"
#include "hyplab/kernels.hpp"
#include "hyplab/lab.hpp"
#include "hyplab/qforms.hpp"
#include "hyplab/spectral.hpp"
#include "hyplab/specfun.hpp"

using namespace hyplab;
using nlohmann::json;

namespace {

struct Globals {
  std::string out;
  std::string format = "csv";
  int threads = 1;
  std::string config;
  std::optional<std::uint64_t> seed;
};

std::string num(double v) { return format_double(v); }

json cjson(cplx v) { return json::array({v.real(), v.imag()}); }

std::string ctext(cplx v) {
  std::ostringstream os;
  os << num(v.real()) << (v.imag() < 0 ? " - " : " + ") << num(std::abs(v.imag())) << "i";
  return os.str();
}

// Writes text to --out when given, else stdout.
void deliver(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw DataError("cannot write " + g.out);
  f << text;
}

void deliver_result(const Globals& g, const ExperimentResult& r, OutputFormat fmt) {
  if (!g.out.empty()) {
    emit(r, fmt, g.out);
    std::cerr << r.rows.size() << " rows written to " << g.out << '\n';
    return;
  }
  if (fmt == OutputFormat::Csv) {
    write_csv(std::cout, r);
  } else {
    write_json(std::cout, r);
  }
}

struct ScanOptions {
  std::vector<std::int64_t> D;
  std::vector<std::int64_t> D_range;
  std::size_t D_sample = 0;
  std::vector<double> X_grid;
  std::vector<double> X_log;
  std::vector<double> t_grid;
  std::vector<std::string> functions;
  int grid = 0;
  bool dry_run = false;
};

void add_scan_options(CLI::App* sub, ScanOptions& o) {
  sub->add_option("-D,--D", o.D, "Discriminants (comma separated)")->delimiter(',')->allow_extra_args(false);
  sub->add_option("--D-range", o.D_range, "All fundamental D in lo,hi")->delimiter(',')->expected(2);
  sub->add_option("--D-sample", o.D_sample, "Seeded sample size from --D-range");
  sub->add_option("--X-grid", o.X_grid, "X values (comma separated)")->delimiter(',');
  sub->add_option("--X-log", o.X_log, "Log-spaced X grid lo,hi,n")->delimiter(',')->expected(3);
  sub->add_option("--t-grid", o.t_grid, "t values (comma separated)")->delimiter(',');
  sub->add_option("--functions", o.functions, "equi-scan test functions")->delimiter(',');
  sub->add_option("--grid", o.grid, "supnorm grid size per side");
  sub->add_flag("--dry-run", o.dry_run, "Print the resolved config and exit");
}

ExperimentConfig resolve_config(ExperimentKind kind, const Globals& g, const ScanOptions& o, const CLI::App& app) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  if (!g.config.empty()) cfg = load_config(g.config, cfg);
  cfg.kind = kind;
  if (!o.D.empty()) cfg.D_list = o.D;
  if (o.D_range.size() == 2) {
    cfg.D_range = std::make_pair(o.D_range[0], o.D_range[1]);
    if (o.D.empty()) cfg.D_list.clear();
  }
  if (o.D_sample) cfg.D_sample = o.D_sample;
  if (!o.X_grid.empty()) cfg.X_grid = o.X_grid;
  if (o.X_log.size() == 3) cfg.X_grid = log_grid(o.X_log[0], o.X_log[1], static_cast<std::size_t>(o.X_log[2]));
  if (!o.t_grid.empty()) cfg.t_grid = o.t_grid;
  if (!o.functions.empty()) cfg.functions = o.functions;
  if (o.grid) cfg.grid = o.grid;
  if (!g.out.empty()) cfg.output = g.out;
  if (app.count("--format")) cfg.format = parse_format(g.format);
  if (app.count("--threads")) cfg.threads = g.threads;
  if (g.seed) cfg.seed = *g.seed;
  cfg.validate();
  return cfg;
}

int run_scan(ExperimentKind kind, const Globals& g, const ScanOptions& o, const CLI::App& app) {
  const ExperimentConfig cfg = resolve_config(kind, g, o, app);
  if (o.dry_run) {
    json j = config_to_json(cfg);
    j["discriminants"] = cfg.discriminants();
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  Globals out = g;
  out.out = cfg.output.string();
  deliver_result(out, run_experiment(cfg), cfg.format);
  return 0;
}

std::optional<QuadForm> parse_form(const std::string& text) {
  if (text.empty()) return std::nullopt;
  QuadForm f;
  char c1 = 0, c2 = 0;
  std::istringstream is(text);
  if (!(is >> f.a >> c1 >> f.b >> c2 >> f.c) || c1 != ',' || c2 != ',') {
    throw UsageError("form must be a,b,c");
  }
  return f;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyplab: hyperbolic lattice points, Heegner points and spectral diagnostics for PSL(2,Z)"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--out", g.out, "Output file (default stdout)");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
  app.add_option("--config", g.config, "Experiment config (JSON)");
  app.add_option("--seed", g.seed, "Seed for sampled discriminants");
  app.fallthrough();

  int status = 0;

  // heegner
  auto* heeg = app.add_subcommand("heegner", "Reduced forms and Heegner points of D");
  std::int64_t hD = 0;
  bool hjson = false;
  heeg->add_option("-D,--D", hD, "Negative fundamental discriminant")->required();
  heeg->add_flag("--json", hjson, "JSON output");
  heeg->callback([&] {
    const HeegnerSet H = heegner_points(Discriminant(hD));
    if (hjson) {
      json j = {{"D", hD}, {"h", H.class_number()}, {"forms", json::array()}, {"points", json::array()}};
      for (const auto& f : H.forms) j["forms"].push_back({f.a, f.b, f.c});
      for (const auto& z : H.points) j["points"].push_back({z.x(), z.y()});
      deliver(g, j.dump(2) + "\n");
      return;
    }
    std::ostringstream os;
    os << "D = " << hD << "  h(D) = " << H.class_number() << '\n';
    for (std::size_t k = 0; k < H.forms.size(); ++k) os << H.forms[k] << "  " << format_point(H.points[k]) << '\n';
    deliver(g, os.str());
  });

  // count
  auto* cnt = app.add_subcommand("count", "Exact count N(z, w, X)");
  std::string cz = "i", cw, cform;
  double cX = 0;
  bool coracle = false, cjsonflag = false;
  cnt->add_option("--z", cz, "Point x+yi");
  cnt->add_option("--w", cw, "Point x+yi (default z)");
  cnt->add_option("--X", cX, "Bound on 4u + 2")->required();
  cnt->add_option("--form", cform, "a,b,c: count at its Heegner point with exact comparisons");
  cnt->add_flag("--oracle", coracle, "Also run the brute-force enumeration");
  cnt->add_flag("--json", cjsonflag, "JSON output");
  cnt->callback([&] {
    const auto form = parse_form(cform);
    CountQuery q = form ? CountQuery::heegner(*form, cX) : CountQuery{parse_point(cz), parse_point(cw.empty() ? cz : cw), cX, {}};
    const CountResult r = count(q);
    json j = {{"z", format_point(q.z)}, {"w", format_point(q.w)}, {"X", cX}, {"count", r.count},
              {"main_term", r.main_term}, {"error", r.error}, {"exact", r.exact},
              {"boundary_ambiguous", r.boundary_ambiguous}};
    if (coracle) {
      const auto b = brute_force_count(q);
      j["oracle"] = b;
      j["oracle_match"] = b == r.count;
      if (b != r.count) status = 3;
    }
    if (cjsonflag) {
      deliver(g, j.dump(2) + "\n");
      return;
    }
    std::ostringstream os;
    os << "N = " << r.count << "  main term = " << num(r.main_term) << "  error = " << num(r.error)
       << (r.exact ? "  (exact)" : "") << (r.boundary_ambiguous ? "  (boundary within rounding)" : "") << '\n';
    if (coracle) os << "oracle = " << j["oracle"] << (j["oracle_match"].get<bool>() ? "  match" : "  MISMATCH") << '\n';
    deliver(g, os.str());
  });

  // error-avg
  auto* eavg = app.add_subcommand("error-avg", "Average of N(z, z, X) - 3X over the Heegner points of D");
  std::int64_t eD = 0;
  double eX = 0;
  eavg->add_option("-D,--D", eD)->required();
  eavg->add_option("--X", eX)->required();
  eavg->callback([&] {
    const double e = heegner_error_average(Discriminant(eD), eX);
    deliver(g, "D = " + std::to_string(eD) + "  X = " + num(eX) + "  e = " + num(e) + '\n');
  });

  // scans
  ScanOptions so;
  const std::pair<const char*, ExperimentKind> scans[] = {
      {"error-scan", ExperimentKind::ErrorScan},     {"equi-scan", ExperimentKind::EquiScan},
      {"supnorm-scan", ExperimentKind::SupnormScan}, {"weyl-verify", ExperimentKind::WeylVerify},
      {"class-scan", ExperimentKind::ClassScan},
  };
  for (const auto& [name, kind] : scans) {
    auto* sub = app.add_subcommand(name, std::string("Run the ") + name + " experiment");
    add_scan_options(sub, so);
    const ExperimentKind k = kind;
    sub->callback([&, k] { status = run_scan(k, g, so, app); });
  }

  // weylsum
  auto* ws = app.add_subcommand("weylsum", "Sum of E(z, 1/2+it) over Heegner points vs the L-function side");
  std::int64_t wD = 0;
  double wt = 0;
  bool wjson = false;
  ws->add_option("-D,--D", wD)->required();
  ws->add_option("--t", wt)->required();
  ws->add_flag("--json", wjson);
  ws->callback([&] {
    const WeylSumResult r = weyl_sum_eisenstein(Discriminant(wD), wt);
    if (wjson) {
      json j = {{"D", r.D}, {"t", r.t}, {"h", r.h}, {"direct", cjson(r.direct)}, {"formula", cjson(r.formula)},
                {"residual", r.residual}, {"direct_weighted", cjson(r.direct_weighted)},
                {"residual_weighted", r.residual_weighted}, {"units_ambiguous", r.units_ambiguous}};
      deliver(g, j.dump(2) + "\n");
      return;
    }
    std::ostringstream os;
    os << "direct  = " << ctext(r.direct) << "\nformula = " << ctext(r.formula) << "\nresidual = " << num(r.residual)
       << '\n';
    if (r.units_ambiguous) os << "weighted residual (2/w per point) = " << num(r.residual_weighted) << '\n';
    deliver(g, os.str());
  });

  // sht
  auto* sh = app.add_subcommand("sht", "Transform h_R(t) of the ball kernel");
  double sR = 0;
  std::string st;
  bool scheck = false;
  sh->add_option("--R", sR)->required();
  sh->add_option("--t", st, "Real t, or 0.5i")->required();
  sh->add_flag("--check-product", scheck, "Compare with the numeric transform");
  sh->callback([&] {
    const cplx t = parse_complex(st);
    const cplx h = sht_ball(sR, t);
    std::ostringstream os;
    os << "h_R(t) = " << num(h.real()) << '\n';
    if (scheck) {
      const cplx n = sht_numeric(KernelSpec::ball(sR), t);
      os << "numeric = " << num(n.real()) << "  relative difference = " << num(std::abs(n - h) / std::abs(h)) << '\n';
    }
    deliver(g, os.str());
  });

  auto* shs = app.add_subcommand("sht-smoothed", "Transform h^+-(t) of the smoothed kernel");
  double sX = 0, sdelta = 0;
  std::string ssign = "+", st2;
  bool scheck2 = false;
  shs->add_option("--X", sX)->required();
  shs->add_option("--delta", sdelta)->required();
  shs->add_option("--sign", ssign)->check(CLI::IsMember({"+", "-"}));
  shs->add_option("--t", st2)->required();
  shs->add_flag("--check-product", scheck2, "Compare the product formula with the numeric transform of k^+-");
  shs->callback([&] {
    const cplx t = parse_complex(st2);
    const Sign sign = ssign == "+" ? Sign::Plus : Sign::Minus;
    const KernelSpec spec = KernelSpec::smoothed_from_count(sX, sdelta, sign);
    const cplx h = sht(spec, t);
    std::ostringstream os;
    os << "h(t) = " << num(h.real()) << "  (Y = " << num(spec.Y()) << ")\n";
    if (scheck2) {
      const cplx n = sht_numeric(spec, t);
      os << "numeric = " << num(n.real()) << "  relative difference = " << num(std::abs(n - h) / std::abs(h)) << '\n';
    }
    deliver(g, os.str());
  });

  // spectral
  auto* ss = app.add_subcommand("spec-sum", "S(T, X) = sum over t_j <= T of X^{i t_j}");
  std::string sfile;
  double sT = 0, sXv = 0;
  ss->add_option("--file", sfile)->required();
  ss->add_option("--T", sT)->required();
  ss->add_option("--X", sXv)->required();
  ss->callback([&] {
    const EigenvalueList E = load_eigenvalues(sfile);
    for (const auto& w : E.warnings) std::cerr << "warning: " << w << '\n';
    const cplx S = spectral_exp_sum(E, sT, sXv);
    const WeylDeficit d = weyl_law_deficit(E, sT);
    std::ostringstream os;
    os << "S = " << ctext(S) << "  |S| = " << num(std::abs(S)) << "  count = " << weyl_count(E, sT)
       << "  Weyl deficit = " << num(d.deficit) << (d.extrapolated ? "  (T beyond data)" : "") << '\n';
    deliver(g, os.str());
  });

  auto* ssc = app.add_subcommand("spec-scan", "Normalized |S(T, X)| over grids");
  std::string scfile;
  std::vector<double> sTg, sXg;
  ssc->add_option("--file", scfile)->required();
  ssc->add_option("--T-grid", sTg)->delimiter(',')->required();
  ssc->add_option("--X-grid", sXg)->delimiter(',')->required();
  ssc->callback([&] {
    const EigenvalueList E = load_eigenvalues(scfile);
    for (const auto& w : E.warnings) std::cerr << "warning: " << w << '\n';
    ExperimentResult r;
    r.columns = {"X", "T", "count", "abs_sum", "luo_sarnak", "per_T"};
    for (const ShapeRow& row : luo_sarnak_shape(E, sXg, sTg)) {
      r.rows.push_back({row.X, row.T, static_cast<std::int64_t>(row.count), row.abs_sum, row.luo_sarnak, row.per_count});
    }
    r.meta = {{"experiment", "spec-scan"}, {"source", E.source}, {"eigenvalues", E.size()}};
    deliver_result(g, r, parse_format(g.format));
  });

  // automorphic
  auto* ei = app.add_subcommand("eisenstein", "E(z, 1/2 + it)");
  std::string ez;
  double et = 0;
  ei->add_option("--z", ez)->required();
  ei->add_option("--t", et)->required();
  ei->callback([&] { deliver(g, "E = " + ctext(eisenstein(parse_point(ez), {et, 0, true})) + '\n'); });

  auto* me = app.add_subcommand("maass-eval", "Evaluate a Maass cusp form from a data file");
  std::string mfile, mz;
  std::size_t midx = 0;
  me->add_option("--file", mfile)->required();
  me->add_option("--index", midx);
  me->add_option("--z", mz)->required();
  me->callback([&] {
    const auto forms = load_maass_forms(mfile);
    if (midx >= forms.size()) throw UsageError("--index out of range");
    deliver(g, "u(z) = " + num(maass_eval(forms[midx], parse_point(mz))) + '\n');
  });

  // specfun eval
  auto* sf = app.add_subcommand("specfun", "Special-function debugging");
  auto* sfe = sf->add_subcommand("eval", "Evaluate one special function");
  sf->require_subcommand(1);
  std::string fn, fs = "0";
  double fq = 1.0, fy = 1.0;
  std::int64_t fD = -4;
  sfe->add_option("--fn", fn, "gamma, lgamma, zeta, xi, Lambda, hurwitz, L, kbessel, phi, j1ratio")
      ->required()
      ->check(CLI::IsMember({"gamma", "lgamma", "zeta", "xi", "Lambda", "hurwitz", "L", "kbessel", "phi", "j1ratio"}));
  sfe->add_option("--s", fs, "Argument (or order for kbessel)");
  sfe->add_option("--q", fq, "Hurwitz shift in (0, 1]");
  sfe->add_option("-D,--D", fD, "Discriminant for L");
  sfe->add_option("--y", fy, "Argument of kbessel");
  sfe->callback([&] {
    const cplx s = parse_complex(fs);
    cplx v;
    if (fn == "gamma") v = cgamma(s);
    else if (fn == "lgamma") v = clgamma(s);
    else if (fn == "zeta") v = zeta(s);
    else if (fn == "xi") v = xi(s);
    else if (fn == "Lambda") v = completed_zeta(s);
    else if (fn == "hurwitz") v = hurwitz_zeta(s, fq);
    else if (fn == "L") v = dirichlet_l(s, Discriminant(fD));
    else if (fn == "kbessel") v = kbessel(s, fy);
    else if (fn == "phi") v = phi(s);
    else v = bessel_j1_ratio(s.real());
    deliver(g, fn + " = " + ctext(v) + '\n');
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return status;
}
