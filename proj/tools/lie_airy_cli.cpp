// lie-airy: command-line surface for oscillatory-integral evaluation grids,
// polynomial property checks, matrix Airy evaluation, and the verification
// suites. Emits CSV or JSON with a stable "schema" field; identical inputs
// and seeds produce byte-identical output.
//
// Exit codes: 0 success/pass, 1 verification failure, 2 usage or parse
// error, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "lieairy/cartan.hpp"
#include "lieairy/checker.hpp"
#include "lieairy/oscillatory.hpp"
#include "lieairy/parallel.hpp"
#include "lieairy/spectral.hpp"

using json = nlohmann::ordered_json;
using namespace lieairy;

namespace {

constexpr const char* kSchema = "1";

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double checked_finite(double v, const char* what) {
  if (!std::isfinite(v))
    throw quadrature_error(std::string("non-finite value in ") + what);
  return v;
}

json complex_json(cdouble z, const char* what) {
  return json::array({checked_finite(z.real(), what), checked_finite(z.imag(), what)});
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
  f << text;
  if (text.empty() || text.back() != '\n') f << '\n';
}

// JSON config files: a flat object whose keys are the long option names of
// the subcommand being run. Values are injected as extra command-line tokens
// for keys not already given, so explicit flags always win.
std::string config_scalar_to_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return fmt17(v.get<double>());
  throw parse_error("unsupported config value type");
}

std::vector<std::string> merge_config_args(int argc, char** argv) {
  std::vector<std::string> tokens;
  for (int i = 1; i < argc; ++i) tokens.emplace_back(argv[i]);

  std::string config_path;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] == "--config" && i + 1 < tokens.size()) config_path = tokens[i + 1];
    if (tokens[i].rfind("--config=", 0) == 0) config_path = tokens[i].substr(9);
  }
  if (config_path.empty()) return tokens;

  std::ifstream f(config_path);
  if (!f) throw parse_error("cannot open config file: " + config_path);
  json j = json::parse(f, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object())
    throw parse_error("config must be a JSON object: " + config_path);

  auto given = [&](const std::string& flag) {
    for (const auto& t : tokens)
      if (t == flag || t.rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string flag = "--" + it.key();
    if (given(flag)) continue;
    tokens.push_back(flag);
    tokens.push_back(config_scalar_to_string(it.value()));
  }
  return tokens;
}

Measure parse_measure(const std::string& name) {
  if (name == "lebesgue") return Measure::Lebesgue;
  if (name == "selfdual") return Measure::SelfDual;
  throw std::invalid_argument("unknown measure: " + name);
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t next = text.find(',', i);
    if (next == std::string::npos) next = text.size();
    out.push_back(std::stod(text.substr(i, next - i)));
    i = next + 1;
  }
  return out;
}

double cycle_shift_parameter(const std::optional<Cycle>& c) {
  if (!c) return 0.0;
  if (const auto* oc = std::get_if<OddCycle>(&*c)) return oc->t;
  const auto& ec = std::get<EvenCycle>(*c);
  return ec.theta.empty() ? 0.0 : ec.sigma * ec.theta[0];
}

json cycle_diagnostics(const std::optional<Cycle>& c) {
  json d;
  if (!c) {
    d["cycle_kind"] = "closed_form";
    return d;
  }
  if (const auto* oc = std::get_if<OddCycle>(&*c)) {
    d["cycle_kind"] = "odd";
    d["t"] = oc->t;
    d["tau"] = oc->tau;
  } else {
    const auto& ec = std::get<EvenCycle>(*c);
    d["cycle_kind"] = "even";
    d["theta"] = ec.theta;
    d["sigma"] = ec.sigma;
  }
  return d;
}

// ---------------------------------------------------------------- eval1d --

struct Eval1dArgs {
  std::string poly;
  double xmin = 0.0, xmax = 0.0;
  int points = 1;
  int order = 0;
  std::string measure = "lebesgue";
  double tol = 1e-8;
  std::string out;
  std::string format = "csv";
};

int run_eval1d(const Eval1dArgs& a) {
  MultiPoly p = parse_poly(a.poly, 1);
  if (p.nvars() != 1)
    throw parse_error("eval1d expects a polynomial in the single variable y1");
  Prepared pp = prepare(p);
  QuadConfig cfg;
  cfg.tol = a.tol;
  cfg.measure = parse_measure(a.measure);

  std::vector<double> xs(static_cast<std::size_t>(a.points));
  for (int i = 0; i < a.points; ++i)
    xs[static_cast<std::size_t>(i)] =
        a.points == 1 ? a.xmin : a.xmin + (a.xmax - a.xmin) * i / (a.points - 1);

  std::vector<EvalResult> results(xs.size());
  std::vector<std::string> failure(xs.size());
  run_blocks<int>(xs.size(), [&](std::size_t i) {
    try {
      results[i] = airy_1d(pp, xs[i], a.order, cfg);
    } catch (const std::exception& e) {
      failure[i] = e.what();
    }
    return 0;
  });
  for (const auto& f : failure)
    if (!f.empty()) throw quadrature_error(f);

  if (a.format == "csv") {
    std::string text = "schema,x,re,im,err_estimate,cycle_t\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto& r = results[i];
      text += std::string(kSchema) + "," + fmt17(xs[i]) + "," +
              fmt17(checked_finite(r.value.real(), "eval1d")) + "," +
              fmt17(checked_finite(r.value.imag(), "eval1d")) + "," +
              fmt17(r.err_estimate) + "," + fmt17(cycle_shift_parameter(r.cycle)) + "\n";
    }
    emit(text, a.out);
  } else {
    json rows = json::array();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto& r = results[i];
      json row;
      row["x"] = xs[i];
      row["value"] = complex_json(r.value, "eval1d");
      row["err_estimate"] = r.err_estimate;
      row["truncation_radius"] = r.truncation_radius;
      row["panels_used"] = r.panels_used;
      row.update(cycle_diagnostics(r.cycle));
      rows.push_back(std::move(row));
    }
    json doc;
    doc["schema"] = kSchema;
    doc["command"] = "eval1d";
    doc["poly"] = a.poly;
    doc["order"] = a.order;
    doc["measure"] = a.measure;
    doc["rows"] = std::move(rows);
    emit(doc.dump(2), a.out);
  }
  return 0;
}

// ----------------------------------------------------------------- check --

int run_check(const std::string& poly_text, const std::string& out) {
  MultiPoly p = parse_poly(poly_text);
  auto rpt = classify(p);
  json doc;
  doc["schema"] = kSchema;
  doc["command"] = "check";
  doc["poly"] = poly_text;
  doc["verdict"] = to_string(rpt.verdict);
  if (rpt.witness)
    doc["witness"] = *rpt.witness;
  else
    doc["witness"] = nullptr;
  json mins = json::object();
  for (const auto& [name, rec] : rpt.min_values) {
    json m;
    m["value"] = rec.value;
    m["location"] = rec.location;
    mins[name] = std::move(m);
  }
  doc["min_values"] = std::move(mins);
  doc["notes"] = rpt.notes;
  emit(doc.dump(2), out);
  return 0;  // Inconclusive is not an error
}

// --------------------------------------------------------------- evalmat --

struct EvalmatArgs {
  int n = 1;
  int m = 3;
  double coeff = std::numeric_limits<double>::quiet_NaN();
  std::string eigs;
  std::string matrix_file;
  std::string measure = "lebesgue";
  double tol = 1e-8;
  double coincidence_tol = 1e-8;
  std::string out;
};

int run_evalmat(const EvalmatArgs& a) {
  MatrixAiryConfig cfg = make_matrix_airy_config(a.n, a.m);
  if (!std::isnan(a.coeff)) cfg.c = a.coeff;
  if (cfg.c == 0.0) throw std::invalid_argument("evalmat: coefficient must be nonzero");
  cfg.measure = parse_measure(a.measure);
  cfg.quad.tol = a.tol;
  cfg.coincidence_tol = a.coincidence_tol;

  std::vector<double> eigen;
  if (!a.matrix_file.empty()) {
    std::ifstream f(a.matrix_file);
    if (!f) throw std::invalid_argument("cannot open matrix file: " + a.matrix_file);
    json j = json::parse(f);
    if (!j.is_array() || static_cast<int>(j.size()) != a.n)
      throw std::invalid_argument("matrix file must be an n x n array of [re, im] pairs");
    CMat h(a.n);
    for (int i = 0; i < a.n; ++i) {
      if (!j[static_cast<std::size_t>(i)].is_array() ||
          static_cast<int>(j[static_cast<std::size_t>(i)].size()) != a.n)
        throw std::invalid_argument("matrix file row has wrong length");
      for (int k = 0; k < a.n; ++k) {
        const auto& cell = j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        if (!cell.is_array() || cell.size() != 2)
          throw std::invalid_argument("matrix entries must be [re, im] pairs");
        h(i, k) = cdouble(cell[0].get<double>(), cell[1].get<double>());
      }
    }
    if (hermiticity_defect(h) > 1e-12)
      throw std::invalid_argument("matrix file is not hermitian");
    eigen = jacobi_eigenvalues(h);
  } else if (!a.eigs.empty()) {
    eigen = parse_number_list(a.eigs);
    if (static_cast<int>(eigen.size()) != a.n)
      throw std::invalid_argument("--eigs length must equal --n");
    std::sort(eigen.begin(), eigen.end());
  } else {
    throw std::invalid_argument("evalmat needs --eigs or --matrix");
  }

  SpectralPoint pt{eigen};
  cdouble value = matrix_airy_diag(cfg, pt);
  auto clusters = confluent_clusters(cfg, pt);

  json doc;
  doc["schema"] = kSchema;
  doc["command"] = "evalmat";
  doc["n"] = a.n;
  doc["m"] = a.m;
  doc["coeff"] = cfg.c;
  doc["measure"] = a.measure;
  doc["value"] = complex_json(value, "evalmat");
  doc["eigenvalues"] = eigen;
  doc["confluent_clusters"] = clusters;
  emit(doc.dump(2), a.out);
  return 0;
}

// ---------------------------------------------------------------- verify --

json report_json(const McReport& r) {
  json j;
  j["check"] = r.check;
  j["n"] = r.n;
  j["lhs"] = complex_json(r.lhs, "verify");
  j["rhs"] = complex_json(r.rhs, "verify");
  j["rel_err"] = r.rel_err;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["stderr_estimate"] = r.stderr_estimate;
  j["passed"] = r.passed;
  return j;
}

McReport make_report(std::string check, int n, cdouble lhs, cdouble rhs, double rel,
                     long long samples, std::uint64_t seed, double se, bool passed) {
  McReport r;
  r.check = std::move(check);
  r.n = n;
  r.lhs = lhs;
  r.rhs = rhs;
  r.rel_err = rel;
  r.samples = samples;
  r.seed = seed;
  r.stderr_estimate = se;
  r.passed = passed;
  return r;
}

std::vector<McReport> suite_ode(double tol) {
  Prepared p = prepare(parse_poly("y1^3/3"));
  QuadConfig cfg;
  cfg.tol = tol;
  const int npts = 41;
  std::vector<double> resid(npts);
  run_blocks<int>(npts, [&](std::size_t i) {
    double x = -5.0 + 10.0 * static_cast<double>(i) / (npts - 1);
    auto a0 = airy_1d(p, x, 0, cfg);
    auto a2 = airy_1d(p, x, 2, cfg);
    resid[i] = std::abs(a2.value + x * a0.value) / (1.0 + std::abs(a0.value));
    return 0;
  });
  double sup = 0.0;
  for (double r : resid) sup = std::max(sup, r);
  return {make_report("ode_residual_sup", 1, sup, 0.0, sup, npts, 0, 0.0, sup <= 1e-5)};
}

std::vector<McReport> suite_tinv(double tol) {
  Prepared p = prepare(parse_poly("y1^3/3"));
  QuadConfig cfg;
  cfg.tol = tol;
  std::vector<McReport> out;
  for (double x : {2.0, 5.0, 10.0}) {
    auto a = airy_1d_on_cycle(p.p, x, 0, cfg, OddCycle{{1.0}, 0.3});
    auto b = airy_1d_on_cycle(p.p, x, 0, cfg, OddCycle{{1.0}, 1.0 / x});
    double diff = std::abs(a.value - b.value);
    double budget = 10.0 * (a.err_estimate + b.err_estimate);
    out.push_back(make_report("shift_independence_x" + fmt17(x), 1, a.value, b.value,
                              relative_error(a.value, b.value), 2, 0, budget / 10.0,
                              diff <= budget));
  }
  return out;
}

std::vector<McReport> suite_growth(double tol) {
  Prepared p = prepare(parse_poly("y1^3/3"));
  QuadConfig cfg;
  cfg.tol = tol;
  std::vector<double> xs;
  for (double x = 1.0; x <= 50.0; x += 1.0) xs.push_back(x);
  std::vector<McReport> out;
  for (int order : {0, 1}) {
    auto table = growth_scan(p, order, xs, cfg);
    // fit the constant on the first half, verify the second half stays below
    double c_first = 0.0;
    for (std::size_t i = 0; i < table.rows.size() / 2; ++i)
      c_first = std::max(c_first, table.rows[i].abs_value / table.rows[i].bound);
    double worst_second = 0.0;
    for (std::size_t i = table.rows.size() / 2; i < table.rows.size(); ++i)
      worst_second = std::max(worst_second, table.rows[i].abs_value / table.rows[i].bound);
    bool ok = std::isfinite(table.fitted_constant) && table.fitted_constant > 0.0 &&
              worst_second <= 1.1 * c_first;
    out.push_back(make_report("growth_bound_r" + std::to_string(order), 1,
                              table.fitted_constant, worst_second, 0.0,
                              static_cast<long long>(xs.size()), 0, 0.0, ok));
  }
  return out;
}

std::vector<McReport> suite_pde(int n, double tol) {
  if (n != 2 && n != 3) throw std::invalid_argument("pde suite: n in {2,3}");
  auto cfg = make_matrix_airy_config(n, 3);
  cfg.quad.tol = std::min(tol, 1e-9);
  std::vector<std::vector<double>> points;
  if (n == 2) {
    points = {{0.5, -0.7}, {2.0, -1.0}, {-1.5, 0.4}, {0.9, -0.8}, {1.5, 0.2}};
  } else {
    points = {{0.8, 0.0, -0.8}, {1.2, 0.3, -0.6}};
  }
  // the stencil truncation scales with the size of pi * A, so the larger
  // n = 3 determinants need a finer step to sit under the same threshold
  double h = (n == 2) ? 1e-2 : 1e-3;
  std::vector<McReport> out;
  for (const auto& y : points) {
    double resid = kontsevich_pde_residual(cfg, SpectralPoint{y}, h);
    std::string name = "pde_residual_y";
    for (double v : y) name += "_" + fmt17(v);
    out.push_back(make_report(name, n, resid, 0.0, resid, 1, 0, 0.0, resid <= 1e-3));
  }
  return out;
}

std::vector<McReport> suite_hciz(int n, long long samples, std::uint64_t seed) {
  std::vector<double> y;
  if (n == 2)
    y = {1.0, -1.0};
  else if (n == 3)
    y = {1.0, 0.0, -1.0};
  else
    throw std::invalid_argument("hciz suite: n in {2,3}");
  return {hciz_check(n, y, y, samples, seed)};
}

std::vector<McReport> run_suite(const std::string& suite, int n, long long samples,
                                std::uint64_t seed, double tol) {
  if (suite == "ode") return suite_ode(tol);
  if (suite == "tinv") return suite_tinv(tol);
  if (suite == "growth") return suite_growth(tol);
  if (suite == "pde") return suite_pde(n, tol);
  if (suite == "weyl") return {weyl_integration_check(n)};
  if (suite == "hciz") return suite_hciz(n, samples, seed);
  if (suite == "limit") return {limit_formula_check(n, 1e-3)};
  if (suite == "ftpi") return {gaussian_pi_ft_check(n), gaussian_pi_derivative_check(n)};
  throw std::invalid_argument("unknown suite: " + suite);
}

int run_verify(const std::string& suite, int n, long long samples, std::uint64_t seed,
               double tol, const std::string& out) {
  auto reports = run_suite(suite, n, samples, seed, tol);
  bool all = true;
  json checks = json::array();
  for (const auto& r : reports) {
    all = all && r.passed;
    checks.push_back(report_json(r));
  }
  json doc;
  doc["schema"] = kSchema;
  doc["command"] = "verify";
  doc["suite"] = suite;
  doc["checks"] = std::move(checks);
  doc["passed"] = all;
  emit(doc.dump(2), out);
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized Airy integrals: evaluation, checking, verification"};
  app.require_subcommand(1);
  std::string config_path;  // consumed by merge_config_args

  Eval1dArgs ea;
  auto* eval1d = app.add_subcommand("eval1d", "evaluate d^r A_p on a 1-d grid");
  eval1d->add_option("--poly", ea.poly, "polynomial in y1")->required();
  eval1d->add_option("--xmin", ea.xmin, "grid start")->capture_default_str();
  eval1d->add_option("--xmax", ea.xmax, "grid end")->capture_default_str();
  eval1d->add_option("--points", ea.points, "grid size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  eval1d->add_option("--order", ea.order, "derivative order r")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  eval1d->add_option("--measure", ea.measure, "lebesgue | selfdual")
      ->check(CLI::IsMember({"lebesgue", "selfdual"}))
      ->capture_default_str();
  eval1d->add_option("--tol", ea.tol, "absolute quadrature tolerance")
      ->capture_default_str();
  eval1d->add_option("--out", ea.out, "output path (default stdout)");
  eval1d->add_option("--format", ea.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  eval1d->add_option("--config", config_path, "JSON config file (flags win)");

  std::string check_poly, check_out;
  auto* check = app.add_subcommand("check", "classify the Airy-property conditions");
  check->add_option("--poly", check_poly, "polynomial in y1..yn")->required();
  check->add_option("--out", check_out, "output path (default stdout)");
  check->add_option("--config", config_path, "JSON config file (flags win)");

  EvalmatArgs ma;
  auto* evalmat = app.add_subcommand("evalmat", "matrix Airy value on hermitian input");
  evalmat->add_option("--n", ma.n, "matrix size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  evalmat->add_option("--m", ma.m, "power in p(X) = c tr(X^m)")->capture_default_str();
  evalmat->add_option("--coeff", ma.coeff, "coefficient c (default 1/3 for m=3, else 1)");
  evalmat->add_option("--eigs", ma.eigs, "comma-separated eigenvalues");
  evalmat->add_option("--matrix", ma.matrix_file, "JSON file: n rows of n [re,im] pairs");
  evalmat->add_option("--measure", ma.measure, "lebesgue | selfdual")
      ->check(CLI::IsMember({"lebesgue", "selfdual"}))
      ->capture_default_str();
  evalmat->add_option("--tol", ma.tol, "quadrature tolerance")->capture_default_str();
  evalmat->add_option("--coincidence-tol", ma.coincidence_tol,
                      "eigenvalue clustering tolerance")
      ->capture_default_str();
  evalmat->add_option("--out", ma.out, "output path (default stdout)");
  evalmat->add_option("--config", config_path, "JSON config file (flags win)");

  std::string v_suite, v_out;
  int v_n = 2;
  long long v_samples = 200000;
  std::uint64_t v_seed = 7;
  double v_tol = 1e-8;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", v_suite, "ode|tinv|growth|pde|weyl|hciz|limit|ftpi")
      ->required()
      ->check(CLI::IsMember(
          {"ode", "tinv", "growth", "pde", "weyl", "hciz", "limit", "ftpi"}));
  verify->add_option("--n", v_n, "dimension / matrix size")->capture_default_str();
  verify->add_option("--samples", v_samples, "Monte Carlo samples")->capture_default_str();
  verify->add_option("--seed", v_seed, "Monte Carlo seed")->capture_default_str();
  verify->add_option("--tol", v_tol, "quadrature tolerance")->capture_default_str();
  verify->add_option("--out", v_out, "output path (default stdout)");
  verify->add_option("--config", config_path, "JSON config file (flags win)");

  std::vector<std::string> args;
  try {
    args = merge_config_args(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  std::reverse(args.begin(), args.end());  // CLI11 consumes reversed tokens
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*eval1d) return run_eval1d(ea);
    if (*check) return run_check(check_poly, check_out);
    if (*evalmat) return run_evalmat(ma);
    if (*verify) return run_verify(v_suite, v_n, v_samples, v_seed, v_tol, v_out);
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
