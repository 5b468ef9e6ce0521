#include "gpswf/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "gpswf/approx.hpp"
#include "gpswf/bounds.hpp"
#include "gpswf/errors.hpp"
#include "gpswf/spectrum.hpp"

namespace gpswf::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  double alpha = 0.0;
  double c = 1.0;
  int count = 10;
  int n = 0;
  int terms = 10;
  int nmax = 20;
  int points = 201;
  double eps = -1.0;
  double eps2 = -1.0;
  std::string format;
  std::string out;
  std::string signal;
  bool detail = false;
};

std::string json_real(double v) { return std::isfinite(v) ? format_real(v) : "null"; }

std::string json_string(const std::string& s) {
  std::string o = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': o += "\\\""; break;
      case '\\': o += "\\\\"; break;
      case '\n': o += "\\n"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          o += buf;
        } else {
          o += ch;
        }
    }
  }
  return o + "\"";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char ch : s) o += (ch == '"') ? std::string("\"\"") : std::string(1, ch);
  return o + "\"";
}

// Minimal row-oriented writer: one object per row in JSON, one line in CSV.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : cols_(std::move(columns)) {}
  void row(std::vector<std::string> csv, std::vector<std::string> json) {
    csv_.push_back(std::move(csv));
    json_.push_back(std::move(json));
  }
  void write_csv(std::ostream& o) const {
    for (std::size_t j = 0; j < cols_.size(); ++j) o << (j ? "," : "") << cols_[j];
    o << '\n';
    for (const auto& r : csv_) {
      for (std::size_t j = 0; j < r.size(); ++j) o << (j ? "," : "") << r[j];
      o << '\n';
    }
  }
  std::string json_rows() const {
    std::string s = "[";
    for (std::size_t i = 0; i < json_.size(); ++i) {
      s += i ? ",\n    {" : "\n    {";
      for (std::size_t j = 0; j < cols_.size(); ++j)
        s += (j ? ", " : "") + json_string(cols_[j]) + ": " + json_[i][j];
      s += "}";
    }
    return s + (json_.empty() ? "]" : "\n  ]");
  }

 private:
  std::vector<std::string> cols_;
  std::vector<std::vector<std::string>> csv_, json_;
};

std::string params_json(const Config& cfg, const std::string& extra = "") {
  return "{\"alpha\": " + json_real(cfg.alpha) + ", \"c\": " + json_real(cfg.c) + extra + "}";
}

void write_json(std::ostream& o, const Config& cfg, const std::string& extra_params,
                const std::vector<std::pair<std::string, std::string>>& fields) {
  o << "{\n  \"params\": " << params_json(cfg, extra_params);
  for (const auto& [k, v] : fields) o << ",\n  " << json_string(k) << ": " << v;
  o << "\n}\n";
}

void check_common(const Config& cfg) {
  if (!(cfg.alpha > -1.0) || !std::isfinite(cfg.alpha)) throw UsageError("--alpha must be > -1");
  if (!(cfg.c >= 0.0) || !std::isfinite(cfg.c)) throw UsageError("--c must be >= 0");
  if (cfg.c > 250.0) throw UsageError("--c above 250 is outside the supported range");
}

void check_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (f == a) return;
  std::string msg = "--format must be one of";
  for (const char* a : allowed) msg += std::string(" ") + a;
  throw UsageError(msg);
}

void cmd_eig(const Config& cfg, std::ostream& o) {
  check_format(cfg.format, {"csv", "json"});
  if (cfg.count < 1 || cfg.count > 2000) throw UsageError("--count must be in [1, 2000]");
  const GpswfBasis b = compute_basis(GpswfParams{cfg.alpha, cfg.c, 0}, cfg.count - 1);
  const std::vector<SpectralTriple> s = compute_spectrum(b);
  Table t({"n", "chi", "lambda", "mu_abs", "chi_lower", "chi_upper"});
  for (const SpectralTriple& e : s) {
    const ChiBounds cb = chi_bounds(e.n, cfg.alpha, cfg.c);
    const std::vector<double> v = {e.chi, e.lambda, e.mu_abs, cb.lower_classical, cb.upper};
    std::vector<std::string> csv = {std::to_string(e.n)}, js = {std::to_string(e.n)};
    for (double x : v) {
      csv.push_back(format_real(x));
      js.push_back(json_real(x));
    }
    t.row(std::move(csv), std::move(js));
  }
  if (cfg.format == "csv") {
    t.write_csv(o);
  } else {
    write_json(o, cfg, ", \"count\": " + std::to_string(cfg.count),
               {{"results", t.json_rows()}});
  }
}

void cmd_eval(const Config& cfg, std::ostream& o) {
  check_format(cfg.format, {"csv", "json"});
  if (cfg.n < 0 || cfg.n > 2000) throw UsageError("--n must be in [0, 2000]");
  if (cfg.points < 2 || cfg.points > 1000001) throw UsageError("--points must be in [2, 1000001]");
  const GpswfBasis b = compute_basis(GpswfParams{cfg.alpha, cfg.c, 0}, cfg.n);
  std::vector<double> xs(cfg.points);
  for (int i = 0; i < cfg.points; ++i) xs[i] = -1.0 + 2.0 * i / (cfg.points - 1);
  const std::vector<double> psi = eval_psi_grid(b, cfg.n, xs);
  const std::vector<double> dpsi = eval_psi_derivative_grid(b, cfg.n, xs);
  Table t({"x", "psi", "dpsi"});
  for (int i = 0; i < cfg.points; ++i)
    t.row({format_real(xs[i]), format_real(psi[i]), format_real(dpsi[i])},
          {json_real(xs[i]), json_real(psi[i]), json_real(dpsi[i])});
  if (cfg.format == "csv") {
    t.write_csv(o);
  } else {
    write_json(o, cfg, ", \"n\": " + std::to_string(cfg.n) + ", \"chi\": " + json_real(b.chi[cfg.n]),
               {{"results", t.json_rows()}});
  }
}

int cmd_project(const Config& cfg, std::ostream& o, std::ostream& err) {
  check_format(cfg.format, {"csv", "json"});
  if (cfg.terms < 0 || cfg.terms > 2000) throw UsageError("--terms must be in [0, 2000]");
  if (cfg.signal.empty()) throw UsageError("--signal is required");
  Signal f;
  try {
    f = signal_from_spec(cfg.signal, cfg.alpha, cfg.c);
  } catch (const DomainError& e) {
    throw UsageError(std::string("--signal: ") + e.what());
  }
  const GpswfBasis b = compute_basis(GpswfParams{cfg.alpha, cfg.c, 0}, cfg.terms);
  const QuadratureRule rule = projection_rule(b, f);
  const ProjectionReport r = project(b, f, cfg.terms, rule);
  if (r.resolution_warning) err << "warning: " << r.warning << '\n';

  if (cfg.format == "csv") {
    // plot-ready reconstruction on the error grid
    constexpr int kGrid = 2001;
    std::vector<double> xs(kGrid);
    for (int i = 0; i < kGrid; ++i) xs[i] = -1.0 + 2.0 * i / (kGrid - 1);
    const std::vector<double> s = reconstruct(b, r.coefficients, xs);
    Table t({"x", "f", "approx", "error"});
    for (int i = 0; i < kGrid; ++i) {
      const double fx = f(xs[i]);
      t.row({format_real(xs[i]), format_real(fx), format_real(s[i]), format_real(fx - s[i])}, {});
    }
    t.write_csv(o);
    return Ok;
  }
  Table t({"n", "coefficient"});
  for (std::size_t n = 0; n < r.coefficients.size(); ++n)
    t.row({}, {std::to_string(n), json_real(r.coefficients[n])});
  write_json(o, cfg,
             ", \"N\": " + std::to_string(cfg.terms) + ", \"signal\": " + json_string(cfg.signal),
             {{"err_weighted_l2", json_real(r.err_weighted_l2)},
              {"err_sup_grid", json_real(r.err_sup_grid)},
              {"signal_norm", json_real(r.signal_norm)},
              {"bound_rhs", r.bound_rhs ? json_real(*r.bound_rhs) : "null"},
              {"quadrature_nodes", std::to_string(rule.size())},
              {"resolution_warning", r.resolution_warning ? "true" : "false"},
              {"results", t.json_rows()}});
  return Ok;
}

int cmd_verify(const Config& cfg, std::ostream& o) {
  check_format(cfg.format, {"text", "csv", "json"});
  if (cfg.nmax < 0 || cfg.nmax > 400) throw UsageError("--nmax must be in [0, 400]");
  const SuiteResult res = verify_suite(cfg.alpha, cfg.c, cfg.nmax);
  auto idx = [](int v) { return v < 0 ? std::string() : std::to_string(v); };

  if (cfg.format == "text") {
    std::map<BoundId, std::vector<const BoundReport*>> by_id;
    for (const BoundReport& r : res.reports) by_id[r.id].push_back(&r);
    for (const auto& [id, rows] : by_id) {
      int checks = 0, fails = 0, infos = 0;
      const BoundReport* worst = nullptr;
      for (const BoundReport* r : rows) {
        if (r->status == CheckStatus::Skipped) continue;
        if (r->status == CheckStatus::Info) ++infos;
        else ++checks;
        if (r->status == CheckStatus::Fail) ++fails;
        if (!worst || r->margin < worst->margin) worst = r;
      }
      const char* tag = fails ? "FAIL" : checks ? "PASS" : infos ? "INFO" : "SKIP";
      o << tag << ' ' << bound_name(id);
      if (!worst) {
        o << " (" << rows.front()->note << ")\n";
        continue;
      }
      o << " checks=" << (checks ? checks : infos) << " worst_n=" << worst->n
        << " margin=" << format_real(worst->margin) << (worst->log10_scale ? " decades" : "");
      if (fails) o << " failures=" << fails;
      o << '\n';
      if (cfg.detail)
        for (const BoundReport* r : rows)
          o << "  " << status_name(r->status) << " n=" << idx(r->n) << " k=" << idx(r->k)
            << " lhs=" << format_real(r->lhs) << " rhs=" << format_real(r->rhs)
            << " margin=" << format_real(r->margin) << '\n';
    }
    o << (res.passed ? "SUITE PASS" : "SUITE FAIL") << '\n';
  } else {
    Table t({"bound", "status", "n", "k", "lhs", "rhs", "margin", "log10", "note"});
    for (const BoundReport& r : res.reports)
      t.row({bound_name(r.id), status_name(r.status), idx(r.n), idx(r.k), format_real(r.lhs),
             format_real(r.rhs), format_real(r.margin), r.log10_scale ? "1" : "0", csv_field(r.note)},
            {json_string(bound_name(r.id)), json_string(status_name(r.status)),
             r.n < 0 ? "null" : std::to_string(r.n), r.k < 0 ? "null" : std::to_string(r.k),
             json_real(r.lhs), json_real(r.rhs), json_real(r.margin),
             r.log10_scale ? "true" : "false", json_string(r.note)});
    if (cfg.format == "csv")
      t.write_csv(o);
    else
      write_json(o, cfg, ", \"nmax\": " + std::to_string(cfg.nmax),
                 {{"passed", res.passed ? "true" : "false"}, {"results", t.json_rows()}});
  }
  return res.passed ? Ok : BoundViolated;
}

void cmd_deflection(const Config& cfg, std::ostream& o) {
  check_format(cfg.format, {"csv", "json"});
  if ((cfg.eps >= 0) == (cfg.eps2 >= 0)) throw UsageError("give exactly one of --eps, --eps2");
  const double eps2 = cfg.eps >= 0 ? cfg.eps * cfg.eps : cfg.eps2;
  if (!(eps2 > 0 && eps2 < 1)) throw UsageError("epsilon^2 must lie in (0, 1)");
  if (cfg.terms < 0 || cfg.terms > 2000) throw UsageError("--terms must be in [0, 2000]");
  if (!(cfg.c > 0)) throw UsageError("deflection needs --c > 0");
  const GpswfBasis b = compute_basis(GpswfParams{cfg.alpha, cfg.c, 0}, cfg.terms);
  const std::vector<SpectralTriple> s = compute_spectrum(b);
  std::vector<double> lam(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) lam[i] = s[i].lambda;
  const Deflection d = deflection(lam, cfg.terms, eps2);
  if (cfg.format == "csv") {
    o << "deflection,bound,case,clamped,lambda_N\n"
      << format_real(d.value) << ',' << format_real(d.bound) << ',' << d.which_case << ','
      << (d.clamped ? 1 : 0) << ',' << format_real(lam[cfg.terms]) << '\n';
    return;
  }
  write_json(o, cfg,
             ", \"eps2\": " + json_real(eps2) + ", \"N\": " + std::to_string(cfg.terms),
             {{"deflection", json_real(d.value)},
              {"bound", json_real(d.bound)},
              {"case", std::to_string(d.which_case)},
              {"clamped", d.clamped ? "true" : "false"},
              {"lambda_0", json_real(lam[0])},
              {"lambda_N", json_real(lam[cfg.terms])}});
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized prolate spheroidal wave functions", "gpswf"};
  app.require_subcommand(1, 1);
  Config cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--alpha", cfg.alpha, "weight exponent, > -1");
    sub->add_option("--c", cfg.c, "bandwidth, >= 0");
    sub->add_option("--out", cfg.out, "write output to this file instead of stdout");
  };
  CLI::App* eig = app.add_subcommand("eig", "eigenvalues chi, lambda, |mu|");
  common(eig);
  eig->add_option("--count", cfg.count, "number of eigenvalues");
  eig->add_option("--format", cfg.format, "csv or json");

  CLI::App* ev = app.add_subcommand("eval", "psi_n and its derivative on a uniform grid");
  common(ev);
  ev->add_option("--n", cfg.n, "index");
  ev->add_option("--points", cfg.points, "grid points on [-1, 1]");
  ev->add_option("--format", cfg.format, "csv or json");

  CLI::App* pr = app.add_subcommand("project", "spectral projection S_N f");
  common(pr);
  pr->add_option("--terms", cfg.terms, "truncation N (indices 0..N)");
  pr->add_option("--signal", cfg.signal,
                 "sinc:a=40 | kernel | sobolev:s=1.0,seed=42,kmax=1000 | file:PATH "
                 "(two-column CSV x,value; linear interpolation)");
  pr->add_option("--format", cfg.format, "csv (reconstruction grid) or json (summary)");

  CLI::App* ve = app.add_subcommand("verify", "check every bound against computed spectra");
  common(ve);
  ve->add_option("--nmax", cfg.nmax, "highest index checked");
  ve->add_option("--format", cfg.format, "text, csv or json");
  ve->add_flag("--detail", cfg.detail, "text format: list every check");

  CLI::App* de = app.add_subcommand("deflection", "Landau-Pollak deflection");
  common(de);
  de->add_option("--eps", cfg.eps, "epsilon (squared internally)");
  de->add_option("--eps2", cfg.eps2, "epsilon squared");
  de->add_option("--terms", cfg.terms, "subspace dimension N");
  de->add_option("--format", cfg.format, "json or csv");


  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return Usage;
  }

  std::ostringstream buf;
  int code = Ok;
  try {
    check_common(cfg);
    if (eig->parsed()) {
      if (cfg.format.empty()) cfg.format = "csv";
      cmd_eig(cfg, buf);
    } else if (ev->parsed()) {
      if (cfg.format.empty()) cfg.format = "csv";
      cmd_eval(cfg, buf);
    } else if (pr->parsed()) {
      if (cfg.format.empty()) cfg.format = "json";
      code = cmd_project(cfg, buf, err);
    } else if (ve->parsed()) {
      if (cfg.format.empty()) cfg.format = "text";
      code = cmd_verify(cfg, buf);
    } else {
      if (cfg.format.empty()) cfg.format = "json";
      cmd_deflection(cfg, buf);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return Usage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return Usage;
  } catch (const PreconditionError& e) {
    err << "usage error: " << e.what() << '\n';
    return Usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return Runtime;
  }

  if (cfg.out.empty()) {
    out << buf.str();
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    f << buf.str();
    if (!f) {
      err << "error: cannot write " << cfg.out << '\n';
      return Runtime;
    }
  }
  return code;
}

}  // namespace gpswf::cli
