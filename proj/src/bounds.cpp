#include "gpswf/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gpswf/errors.hpp"
#include "gpswf/spectrum.hpp"

namespace gpswf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;
constexpr double kLn10 = std::numbers::ln10;
constexpr double kRelTol = 1e-12;
constexpr double kTraceTol = 1e-8;
const double kLogTol = std::log10(1.0 + kRelTol);

void require_alpha(double alpha) {
  if (!(alpha > -1.0) || !std::isfinite(alpha)) throw DomainError("alpha must be a finite real > -1");
}

void require_decay_region(int n, double alpha, double c) {
  require_alpha(alpha);
  if (!(c > 0) || !std::isfinite(c)) throw DomainError("decay bounds need c > 0");
  if (!(n > (kE * c + 1) / 2))
    throw DomainError("decay bounds need n > (ec+1)/2, got n=" + std::to_string(n));
}

// valid for every a > -1 since it is (c/2pi) times the squared mu bound
double log_lambda_bound_unchecked(int n, double alpha, double c) {
  const double r = (2.0 * n - 1) / (kE * c);
  return std::log(lambda_bound_constant(alpha)) - (alpha + 2) * std::log(c) -
         2 * std::log(std::log(r)) - (2.0 * n + alpha + 1) * std::log(r);
}

BoundReport linear(BoundId id, int n, double lhs, double rhs) {
  BoundReport r;
  r.id = id;
  r.n = n;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.satisfied = lhs <= rhs + kRelTol * std::max(1.0, std::fabs(rhs));
  r.status = r.satisfied ? CheckStatus::Pass : CheckStatus::Fail;
  return r;
}

// lhs, rhs as log10 values
BoundReport logscale(BoundId id, int n, double lhs, double rhs) {
  BoundReport r;
  r.id = id;
  r.n = n;
  r.lhs = lhs;
  r.rhs = rhs;
  r.log10_scale = true;
  r.margin = rhs - lhs;
  r.satisfied = lhs <= rhs + kLogTol;
  r.status = r.satisfied ? CheckStatus::Pass : CheckStatus::Fail;
  return r;
}

BoundReport skipped(BoundId id, std::string why) {
  BoundReport r;
  r.id = id;
  r.status = CheckStatus::Skipped;
  r.satisfied = true;
  r.note = std::move(why);
  return r;
}

BoundReport as_info(BoundReport r) {
  r.status = CheckStatus::Info;
  return r;
}

double log10_lambda(const SpectralTriple& t) { return t.log_lambda / kLn10; }

// |mu| from log lambda, which stays finite after mu_abs underflows
double log10_mu(const SpectralTriple& t, double c) {
  return (t.log_lambda - std::log(c / (2 * kPi))) / 2 / kLn10;
}

double golden_max(auto&& g, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = g(x1), f2 = g(x2);
  for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = g(x1);
    }
  }
  return f1 > f2 ? x1 : x2;
}

void chi_checks(const GpswfBasis& b, std::vector<BoundReport>& out) {
  const double alpha = b.params.alpha, c = b.params.c;
  bool improved_any = false;
  for (int n = 0; n < b.count; ++n) {
    const ChiBounds cb = chi_bounds(n, alpha, c, b.chi[n]);
    out.push_back(linear(BoundId::ChiUpper, n, b.chi[n], cb.upper));
    out.push_back(linear(BoundId::ChiLowerClassical, n, cb.lower_classical, b.chi[n]));
    if (cb.lower_improved) {
      out.push_back(linear(BoundId::ChiLowerImproved, n, *cb.lower_improved, b.chi[n]));
      improved_any = true;
    }
  }
  if (!improved_any)
    out.push_back(skipped(BoundId::ChiLowerImproved, "needs 0 <= alpha <= 1/4 and q < 3/17"));
}

void decay_checks(const GpswfBasis& b, const std::vector<SpectralTriple>& s,
                  std::vector<BoundReport>& out) {
  const double alpha = b.params.alpha, c = b.params.c;
  bool any = false;
  for (int n = 0; n < b.count; ++n) {
    if (!(n > (kE * c + 1) / 2)) continue;
    any = true;
    out.push_back(logscale(BoundId::MuBound, n, log10_mu(s[n], c), log_mu_bound(n, alpha, c) / kLn10));
    BoundReport r = logscale(BoundId::LambdaBound, n, log10_lambda(s[n]),
                             log_lambda_bound_unchecked(n, alpha, c) / kLn10);
    if (alpha <= 0) r.note = "alpha <= 0: (c/2pi) mu_bound^2";
    out.push_back(r);
  }
  if (!any) {
    out.push_back(skipped(BoundId::MuBound, "no n > (ec+1)/2 within nmax"));
    out.push_back(skipped(BoundId::LambdaBound, "no n > (ec+1)/2 within nmax"));
  }
}

void legacy_checks(const GpswfBasis& b, const std::vector<SpectralTriple>& s,
                   std::vector<BoundReport>& out) {
  const double alpha = b.params.alpha, c = b.params.c;
  if (!(c >= 1) || alpha < 0) {
    out.push_back(skipped(BoundId::LegacyLambda, "needs c >= 1 and alpha >= 0"));
    return;
  }
  bool any = false;
  const int first = static_cast<int>(std::ceil(2 * c));
  for (int n = first; n < b.count; ++n) {
    if (!(n > c)) continue;
    any = true;
    out.push_back(logscale(BoundId::LegacyLambda, n, log10_lambda(s[n]),
                           -2.0 * n * std::log(n / c) / kLn10));
  }
  if (!any) out.push_back(skipped(BoundId::LegacyLambda, "no n >= 2c within nmax"));
}

void local_checks(const GpswfBasis& b, std::vector<BoundReport>& out) {
  bool any = false;
  for (int n = 0; n < b.count; ++n) {
    const std::optional<LocalEstimate> e = local_estimate_check(b, n);
    if (!e) continue;
    any = true;
    out.push_back(linear(BoundId::LocalEstimate, n, e->sup_value, e->bound));
    out.push_back(linear(BoundId::LocalEnergy, n, e->a_squared, e->bound));
    out.push_back(linear(BoundId::LocalSupVsEnergy, n, e->sup_value, e->a_squared));
  }
  if (!any) {
    const char* why = "needs 0 <= alpha <= 1/4 and q < 3/17";
    out.push_back(skipped(BoundId::LocalEstimate, why));
    out.push_back(skipped(BoundId::LocalEnergy, why));
    out.push_back(skipped(BoundId::LocalSupVsEnergy, why));
  }
}

void beta_checks(const GpswfBasis& b, const std::vector<SpectralTriple>& s,
                 std::vector<BoundReport>& out) {
  const double alpha = b.params.alpha, c = b.params.c;
  const double ab = std::sqrt(beta_region_constant(alpha));
  const double log_c = std::log10(beta_bound_constant(alpha));
  bool any = false;
  for (int n = 0; n < b.count && c > 0; ++n) {
    if (n < ab * c || !(c * c < b.chi[n])) continue;
    const double slope = std::log10(2 * std::sqrt(b.chi[n]) / c);
    const double log_mu = log10_mu(s[n], c);
    const double half_log_lambda = log10_lambda(s[n]) / 2;
    BoundReport worst, worst_unit;
    bool have = false;
    for (int k = n % 2; k <= n / ab; k += 2) {
      const double lb = std::log10(std::fabs(b.beta[n][k]));
      const double rhs = log_c + k * slope + log_mu;
      BoundReport r = logscale(BoundId::BetaBound, n, lb + half_log_lambda, rhs);
      BoundReport u = logscale(BoundId::BetaBoundUnit, n, lb, rhs);
      r.k = u.k = k;
      if (!have || r.margin < worst.margin) worst = r;
      if (!have || u.margin < worst_unit.margin) worst_unit = u;
      have = true;
    }
    if (!have) continue;
    any = true;
    worst.note = "psi normalised to ||psi_n||^2 = lambda_n";
    worst_unit.note = "unit-norm psi";
    out.push_back(worst);
    out.push_back(as_info(worst_unit));
  }
  if (!any) out.push_back(skipped(BoundId::BetaBound, "no n >= cA with q < 1 within nmax"));

  // empirical decay of the leading coefficients in n, constants unspecified
  const double n0 = std::pow(75 + 46 * alpha, 0.7) * c;
  std::vector<double> ns, ys;
  for (int n = static_cast<int>(std::ceil(n0)); n < b.count; ++n) {
    double m = 0.0;
    for (int k = n % 2; k <= n / 1.7; k += 2) m = std::max(m, std::fabs(b.beta[n][k]));
    if (m == 0.0) continue;
    ns.push_back(n);
    ys.push_back(std::log10(m));
  }
  if (ns.size() < 3 || c <= 0) {
    out.push_back(skipped(BoundId::BetaDecay, "fewer than 3 indices with n >= (75+46a)^0.7 c"));
    return;
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) mx += ns[i], my += ys[i];
  mx /= ns.size();
  my /= ns.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    sxy += (ns[i] - mx) * (ys[i] - my);
    sxx += (ns[i] - mx) * (ns[i] - mx);
  }
  BoundReport r = linear(BoundId::BetaDecay, -1, sxy / sxx, 0.0);
  r.satisfied = r.lhs < 0;
  r.status = r.satisfied ? CheckStatus::Pass : CheckStatus::Fail;
  r.note = "slope of log10 max_{k<=n/1.7}|beta_k^n| over n";
  out.push_back(r);
}

void monotonicity_checks(const GpswfBasis& b, const std::vector<SpectralTriple>& s,
                         std::vector<BoundReport>& out) {
  const double alpha = b.params.alpha, c = b.params.c;
  if (alpha < 0 || c <= 0) {
    out.push_back(skipped(BoundId::AlphaMonotonicity, "needs alpha >= 0 and c > 0"));
    return;
  }
  GpswfParams p{alpha + 0.5, c, 0};
  const GpswfBasis other = compute_basis(p, b.count - 1);
  const std::vector<SpectralTriple> so = compute_spectrum(other);
  for (int n = 0; n < b.count; ++n) {
    BoundReport r = logscale(BoundId::AlphaMonotonicity, n, log10_lambda(so[n]), log10_lambda(s[n]));
    r.note = "lambda_n at alpha+0.5 vs alpha";
    out.push_back(r);
  }
}

void decay_lambda2_info(const GpswfBasis& b, const std::vector<SpectralTriple>& s,
                        std::vector<BoundReport>& out) {
  const double alpha = b.params.alpha, c = b.params.c;
  if (!(alpha > 0 && alpha < 1.5) || c <= 0) return;
  for (int n = 0; n < b.count; ++n) {
    const double arg = (4.0 * n + 4 * alpha + 2) / (kE * c);
    const double rhs = -(2.0 * n + 1) * (std::log(arg) + c * c / (2.0 * n + 1));
    BoundReport r = as_info(logscale(BoundId::DecayLambda2, n, log10_lambda(s[n]), rhs / kLn10));
    r.note = "C_alpha = 1, N_alpha(c) unknown";
    out.push_back(r);
  }
}

}  // namespace

const char* bound_name(BoundId id) {
  switch (id) {
    case BoundId::ChiUpper: return "chi_upper";
    case BoundId::ChiLowerClassical: return "chi_lower_classical";
    case BoundId::ChiLowerImproved: return "chi_lower_improved";
    case BoundId::MuBound: return "mu_bound";
    case BoundId::LambdaBound: return "lambda_bound";
    case BoundId::LegacyLambda: return "legacy_lambda_b1";
    case BoundId::LocalEstimate: return "local_estimate";
    case BoundId::LocalEnergy: return "local_energy";
    case BoundId::LocalSupVsEnergy: return "local_sup_vs_energy";
    case BoundId::BetaBound: return "beta_bound";
    case BoundId::BetaBoundUnit: return "beta_bound_unit_norm";
    case BoundId::BetaDecay: return "beta_decay";
    case BoundId::AlphaMonotonicity: return "alpha_monotonicity";
    case BoundId::TraceIdentity: return "trace_identity";
    case BoundId::DecayLambda2: return "decay_lambda2";
  }
  return "unknown";
}

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skipped: return "SKIP";
    case CheckStatus::Info: return "INFO";
  }
  return "?";
}

double chi_improved_constant(double alpha) {
  const double t = 2 * alpha + 1;
  return 2 * t * t + 1 - 2 * t * std::sqrt(1 + t * t);
}

ChiBounds chi_bounds(int n, double alpha, double c, std::optional<double> chi) {
  require_alpha(alpha);
  if (n < 0) throw DomainError("chi_bounds needs n >= 0");
  ChiBounds out;
  out.lower_classical = n * (n + 2 * alpha + 1);
  out.upper = out.lower_classical + c * c;
  if (chi && alpha >= 0 && alpha <= 0.25 && *chi > 0) {
    const double q = c * c / *chi;
    if (q > 0 && q < 3.0 / 17.0)
      out.lower_improved = out.lower_classical + chi_improved_constant(alpha) * c * c;
  }
  return out;
}

double mu_bound_constant(double alpha) {
  require_alpha(alpha);
  return std::exp((3 + alpha) / 2 * std::log(2 / kE) + 1.25 * std::log(kPi) +
                  0.5 * ln_gamma(alpha + 1));
}

double lambda_bound_constant(double alpha) {
  require_alpha(alpha);
  return std::exp(1.5 * std::log(kPi) - std::log(2.0) + (alpha + 3) * std::log(2 / kE) +
                  ln_gamma(alpha + 1));
}

double log_mu_bound(int n, double alpha, double c) {
  require_decay_region(n, alpha, c);
  const double r = (2.0 * n - 1) / (kE * c);
  return std::log(mu_bound_constant(alpha)) - (alpha + 3) / 2 * std::log(c) -
         std::log(std::log(r)) - (n + (alpha + 1) / 2) * std::log(r);
}

double mu_bound(int n, double alpha, double c) { return std::exp(log_mu_bound(n, alpha, c)); }

double log_lambda_bound(int n, double alpha, double c) {
  require_decay_region(n, alpha, c);
  if (!(alpha > 0)) throw DomainError("lambda_bound is stated for alpha > 0");
  return log_lambda_bound_unchecked(n, alpha, c);
}

double lambda_bound(int n, double alpha, double c) {
  return std::exp(log_lambda_bound(n, alpha, c));
}

double legacy_lambda_bound(int n, double c, double b) {
  if (!(b > 0 && b < 4 / kE)) throw DomainError("legacy bound needs 0 < b < 4/e");
  if (!(c > 0)) throw DomainError("legacy bound needs c > 0");
  if (!(b * n > c)) throw DomainError("legacy bound needs bn > c");
  return std::exp(-2.0 * n * std::log(b * n / c));
}

std::optional<LocalEstimate> local_estimate_check(const GpswfBasis& basis, int n) {
  const double alpha = basis.params.alpha, c = basis.params.c;
  if (n < 0 || n >= basis.count) throw PreconditionError("index out of range");
  if (!(alpha >= 0 && alpha <= 0.25)) return std::nullopt;
  const double chi = basis.chi[n];
  if (!(chi > 0)) return std::nullopt;
  const double q = c * c / chi;
  if (!(q > 0 && q < 3.0 / 17.0)) return std::nullopt;

  auto g = [&](double x) {
    const double psi = eval_psi(basis, n, x);
    const double w = (1 - x * x);
    return std::sqrt(w * (1 - q * x * x)) * std::pow(w, alpha) * psi * psi;
  };
  constexpr int kGrid = 4097;
  std::vector<double> xs(kGrid);
  for (int i = 0; i < kGrid; ++i) xs[i] = static_cast<double>(i) / (kGrid - 1);
  const std::vector<double> psi = eval_psi_grid(basis, n, xs);
  int best = 0;
  double best_v = -1;
  for (int i = 0; i < kGrid; ++i) {
    const double w = 1 - xs[i] * xs[i];
    const double v = std::sqrt(w * (1 - q * xs[i] * xs[i])) * std::pow(w, alpha) * psi[i] * psi[i];
    if (v > best_v) best_v = v, best = i;
  }
  LocalEstimate e;
  e.q = q;
  e.bound = 2 * alpha + 1;
  e.sup_value = best_v;
  e.argmax = xs[best];
  const double lo = xs[std::max(best - 1, 0)], hi = xs[std::min(best + 1, kGrid - 1)];
  const double xr = golden_max(g, lo, hi);
  const double vr = g(xr);
  if (vr > e.sup_value) e.sup_value = vr, e.argmax = xr;

  const double p0 = eval_psi(basis, n, 0.0);
  const double d0 = eval_psi_derivative(basis, n, 0.0);
  e.a_squared = p0 * p0 + d0 * d0 / chi;
  return e;
}

double beta_bound_constant(double alpha) {
  require_alpha(alpha);
  return std::exp(alpha * std::log(2.0) + 0.75 * std::log(1.5) +
                  (0.75 + alpha) * std::log(1.5 + 2 * alpha) - (2 * alpha + 1.5));
}

double beta_region_constant(double alpha) {
  require_alpha(alpha);
  return (alpha >= 0 && alpha <= 0.25) ? 2.18 : 2.8;
}

SuiteResult verify_suite(double alpha, double c, int nmax) {
  require_alpha(alpha);
  if (!(c >= 0) || !std::isfinite(c)) throw DomainError("c must be a finite real >= 0");
  SuiteResult res;
  std::vector<BoundReport>& out = res.reports;

  if (nmax >= 1) {
    const GpswfBasis b = compute_basis(GpswfParams{alpha, c, 0}, nmax);
    const std::vector<SpectralTriple> s = compute_spectrum(b);
    chi_checks(b, out);
    if (c > 0) {
      decay_checks(b, s, out);
      legacy_checks(b, s, out);
    } else {
      out.push_back(skipped(BoundId::MuBound, "c = 0"));
      out.push_back(skipped(BoundId::LambdaBound, "c = 0"));
      out.push_back(skipped(BoundId::LegacyLambda, "c = 0"));
    }
    local_checks(b, out);
    beta_checks(b, s, out);
    monotonicity_checks(b, s, out);
    decay_lambda2_info(b, s, out);
  }

  if (c > 0) {
    const TraceIdentity t = trace_identity(GpswfParams{alpha, c, 0});
    BoundReport r = linear(BoundId::TraceIdentity, -1, t.relative_gap, kTraceTol);
    r.satisfied = t.relative_gap <= kTraceTol;
    r.status = r.satisfied ? CheckStatus::Pass : CheckStatus::Fail;
    r.note = "sum " + std::to_string(t.terms) + " terms";
    out.push_back(r);
  } else {
    out.push_back(skipped(BoundId::TraceIdentity, "c = 0"));
  }

  std::stable_sort(out.begin(), out.end(), [](const BoundReport& a, const BoundReport& b) {
    if (a.id != b.id) return a.id < b.id;
    return a.n < b.n;
  });
  for (const BoundReport& r : out)
    if (r.status == CheckStatus::Fail) res.passed = false;
  return res;
}

}  // namespace gpswf
