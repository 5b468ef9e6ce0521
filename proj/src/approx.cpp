#include "gpswf/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gpswf/errors.hpp"
#include "gpswf/kernels.hpp"
#include "gpswf/spectrum.hpp"

namespace gpswf {

namespace {

constexpr int kSupGrid = 2001;
constexpr double kTailWarn = 1e-10;

std::vector<double> sample(const Signal& f, std::span<const double> xs) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out[i] = f(xs[i]);
    if (!std::isfinite(out[i])) throw DomainError("signal is not finite at x=" + std::to_string(xs[i]));
  }
  return out;
}

// <f, p_k> for k < count by the rule
std::vector<double> jacobi_coefficients(const QuadratureRule& rule, std::span<const double> fx,
                                        std::size_t count) {
  std::vector<double> wf(fx.size());
  for (std::size_t i = 0; i < fx.size(); ++i) wf[i] = rule.weights[i] * fx[i];
  const JacobiRecurrence rec(rule.alpha, count);
  std::vector<double> out(count);
  simd::active_kernels().jacobi_moments(rec, rule.nodes, wf, out);
  return out;
}

bool tail_not_decaying(std::span<const double> coef, double norm) {
  const std::size_t from = coef.size() - std::max<std::size_t>(1, coef.size() / 10);
  double top = 0.0;
  for (std::size_t k = from; k < coef.size(); ++k) top = std::max(top, std::fabs(coef[k]));
  return top > kTailWarn * std::max(norm, std::numeric_limits<double>::min());
}

// S_N f in the Jacobi basis
std::vector<double> combine(const GpswfBasis& basis, std::span<const double> coefficients) {
  const std::size_t K = static_cast<std::size_t>(basis.matrix_size());
  std::vector<double> g(K, 0.0);
  for (std::size_t n = 0; n < coefficients.size(); ++n)
    for (std::size_t k = 0; k < K; ++k) g[k] += coefficients[n] * basis.beta[n][k];
  return g;
}

}  // namespace

std::vector<double> reconstruct(const GpswfBasis& basis, std::span<const double> coefficients,
                                std::span<const double> x) {
  if (coefficients.size() > static_cast<std::size_t>(basis.count))
    throw PreconditionError("more coefficients than basis functions");
  for (double v : x)
    if (!(std::fabs(v) <= 1.0)) throw DomainError("reconstruction point outside [-1, 1]");
  const std::vector<double> g = combine(basis, coefficients);
  std::vector<double> out(x.size());
  simd::active_kernels().jacobi_series(g, basis.recurrence, x, out);
  return out;
}

QuadratureRule projection_rule(const GpswfBasis& basis, const Signal& f) {
  const int K = basis.matrix_size();
  int m = std::max(2 * K, static_cast<int>(std::ceil(1.2 * f.bandwidth)) + K + 64);
  if (m % 2) ++m;
  return gauss_jacobi(basis.params.alpha, static_cast<std::size_t>(m));
}

ProjectionReport project(const GpswfBasis& basis, const Signal& f, int N,
                         const QuadratureRule& rule) {
  if (N < 0 || N >= basis.count)
    throw PreconditionError("truncation N=" + std::to_string(N) + " needs 0 <= N < " +
                            std::to_string(basis.count));
  const std::size_t K = static_cast<std::size_t>(basis.matrix_size());
  if (rule.size() < 2 * K) throw PreconditionError("quadrature rule needs at least 2K nodes");
  if (rule.alpha != basis.params.alpha) throw PreconditionError("rule and basis differ in alpha");

  ProjectionReport rep;
  rep.N = N;
  const std::vector<double> fx = sample(f, rule.nodes);
  const std::vector<double> fhat = jacobi_coefficients(rule, fx, rule.size());
  const auto& kern = simd::active_kernels();
  rep.signal_norm = std::sqrt(kern.weighted_dot(rule.weights, fx, fx));

  // <f, psi_n> = sum_k beta_k^n <f, p_k>; exact rewrite of the quadrature sum
  rep.coefficients.resize(N + 1);
  for (int n = 0; n <= N; ++n)
    rep.coefficients[n] = kern.dot(basis.beta[n], std::span<const double>(fhat.data(), K));

  const std::vector<double> g = combine(basis, rep.coefficients);
  std::vector<double> sn(rule.size());
  kern.jacobi_series(g, basis.recurrence, rule.nodes, sn);
  std::vector<double> diff(rule.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = fx[i] - sn[i];
  rep.err_weighted_l2 = std::sqrt(kern.weighted_dot(rule.weights, diff, diff));

  std::vector<double> grid(kSupGrid);
  for (int i = 0; i < kSupGrid; ++i) grid[i] = -1.0 + 2.0 * i / (kSupGrid - 1);
  const std::vector<double> fg = sample(f, grid);
  std::vector<double> sg(kSupGrid);
  kern.jacobi_series(g, basis.recurrence, grid, sg);
  for (int i = 0; i < kSupGrid; ++i)
    rep.err_sup_grid = std::max(rep.err_sup_grid, std::fabs(fg[i] - sg[i]));

  if (basis.params.c > 0) {
    const MuResult mu = compute_mu(basis, N);
    const double log_lambda = std::log(basis.params.c / (2 * std::numbers::pi)) + 2 * mu.log_mu_abs;
    rep.bound_rhs = std::exp(0.5 * log_lambda) * rep.signal_norm;
  }

  if (tail_not_decaying(fhat, rep.signal_norm)) {
    rep.resolution_warning = true;
    rep.warning = "Jacobi coefficients of the signal do not decay within the rule (" +
                  std::to_string(rule.size()) + " nodes); the projection is under-resolved";
  }
  return rep;
}

SobolevNorm sobolev_norm(const Signal& f, double s, double alpha, int kmax,
                         const QuadratureRule& rule) {
  if (!(s >= 0) || !std::isfinite(s)) throw DomainError("sobolev_norm needs s >= 0");
  if (kmax < 0) throw DomainError("sobolev_norm needs kmax >= 0");
  if (rule.alpha != alpha) throw PreconditionError("rule alpha differs from alpha");
  const std::vector<double> fx = sample(f, rule.nodes);
  const std::vector<double> coef = jacobi_coefficients(rule, fx, static_cast<std::size_t>(kmax) + 1);
  SobolevNorm out;
  double sum = 0.0;
  for (int k = 0; k <= kmax; ++k)
    sum += coef[k] * coef[k] * std::pow(1.0 + static_cast<double>(k) * k, s);
  out.value = std::sqrt(sum);
  const double l2 = std::sqrt(simd::active_kernels().weighted_dot(rule.weights, fx, fx));
  out.resolution_warning = static_cast<std::size_t>(kmax) >= rule.size() || tail_not_decaying(coef, l2);
  return out;
}

double approx_error_bound_rhs(ApproxBoundKind kind, double lambda_n, double chi_n, double alpha,
                              double c, double norm) {
  if (!(lambda_n > 0 && lambda_n < 1)) throw DomainError("lambda_N must lie in (0, 1)");
  if (!(chi_n > 0)) throw DomainError("chi_N must be positive");
  if (!(alpha > -1)) throw DomainError("alpha must be > -1");
  if (!(c > 0)) throw DomainError("c must be positive");
  const double root = std::sqrt(lambda_n) * norm;
  switch (kind) {
    case ApproxBoundKind::Approxx1: return root;
    case ApproxBoundKind::Approxx2: return root * std::pow(chi_n, 0.5 + alpha / 2);
    case ApproxBoundKind::Approx1: return root * std::pow(chi_n, (1 + alpha) / 2);
    case ApproxBoundKind::Approx2: return root * std::pow(chi_n, 1 + alpha / 2);
  }
  return root;
}

Deflection deflection(std::span<const double> lambdas, int N, double eps2) {
  if (N < 0 || static_cast<std::size_t>(N) >= lambdas.size())
    throw DomainError("deflection needs 0 <= N < number of eigenvalues");
  if (!(eps2 > 0 && eps2 < 1)) throw DomainError("deflection needs 0 < eps2 < 1");
  for (std::size_t i = 1; i < lambdas.size(); ++i)
    if (lambdas[i] > lambdas[i - 1]) throw DomainError("eigenvalues must be in descending order");
  const double l0 = lambdas[0], ln = lambdas[N];
  Deflection d;
  d.bound = eps2 / (1 - ln);
  if (1 - eps2 <= ln) {
    d.which_case = 1;
    d.value = 1.0;
  } else {
    d.which_case = 2;
    if (l0 == ln) throw DomainError("deflection undefined: lambda_0 == lambda_N");
    d.value = (l0 - (1 - eps2)) / (l0 - ln);
    if (d.value < 0) {
      d.value = 0.0;
      d.clamped = true;
    }
  }
  d.within_bound = d.value <= std::max(1.0, d.bound) * (1 + 1e-12);
  return d;
}

}  // namespace gpswf
