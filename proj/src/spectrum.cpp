#include "gpswf/spectrum.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "gpswf/errors.hpp"
#include "gpswf/kernels.hpp"

namespace gpswf {

namespace {

constexpr double kPi = std::numbers::pi;
// Above this cancellation factor the Bessel-sum value of mu is replaced by
// the ratio chain from the previous index.
constexpr double kMaxCancellation = 100.0;

struct DirectMu {
  double value = 0.0;  // signed mu_n / i^n
  double cancellation = std::numeric_limits<double>::infinity();
  bool usable = false;
};

std::vector<double> half_chebyshev_grid(double c) {
  std::vector<double> xs;
  for (int j = 0; j <= 128; ++j) {
    const double x = std::cos(kPi * j / 256.0);
    if (c * x >= 1e-6) xs.push_back(x);
  }
  return xs;
}

// mu_n psi_n(x*) = sum_k beta_k i^k sqrt(pi) (2/(c x*))^{a+1/2}
//                  Gamma(k+a+1)/Gamma(k+1) J_{k+a+1/2}(c x*) / sqrt(h_k)
DirectMu direct_mu(const GpswfBasis& b, int n, const std::vector<double>& grid) {
  DirectMu out;
  const double alpha = b.params.alpha;
  const double c = b.params.c;
  if (grid.empty()) return out;
  const std::vector<double> psi = eval_psi_grid(b, n, grid);
  std::size_t best = 0;
  for (std::size_t i = 1; i < psi.size(); ++i)
    if (std::fabs(psi[i]) > std::fabs(psi[best])) best = i;
  const double xs = grid[best];
  const double z = c * xs;
  const std::vector<double>& beta = b.beta[n];

  double biggest = 0.0;
  for (double v : beta) biggest = std::max(biggest, std::fabs(v));

  double sum = 0.0, sum_abs = 0.0;
  for (std::size_t k = n % 2; k < beta.size(); k += 2) {
    if (beta[k] == 0.0) continue;
    const int ki = static_cast<int>(k);
    const double sign = (((ki - n) / 2) % 2 == 0) ? 1.0 : -1.0;
    double t;
    if (k == 0) {
      t = kernel_K(alpha, z) / std::sqrt(jacobi_norm_h(0, alpha));
    } else {
      const double nu = ki + alpha + 0.5;
      if (nu > 400.0) {
        // beyond the Bessel envelope; fine only if the coefficients are gone
        if (std::fabs(beta[k]) > 1e-15 * biggest) return out;
        break;
      }
      const double log_coef = 0.5 * std::log(kPi) + (alpha + 0.5) * std::log(2.0 / z) +
                              ln_gamma(ki + alpha + 1) - ln_gamma(ki + 1.0) -
                              0.5 * std::log(jacobi_norm_h(ki, alpha));
      const double j = bessel_j(nu, z);
      t = (j == 0.0) ? 0.0 : std::exp(log_coef + std::log(std::fabs(j))) * (j < 0 ? -1.0 : 1.0);
    }
    const double term = beta[k] * sign * t;
    sum += term;
    sum_abs += std::fabs(term);
  }
  out.value = sum / psi[best];
  out.cancellation = sum_abs / std::fabs(sum);
  out.usable = std::isfinite(out.value) && std::isfinite(out.cancellation);
  return out;
}

// X_n = <x psi_n, psi_{n+1}> from the Jacobi matrix
double position_overlap(const GpswfBasis& b, int n) {
  const std::vector<double>& u = b.beta[n];
  const std::vector<double>& v = b.beta[n + 1];
  const std::vector<double>& a = b.recurrence.a;
  double s = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (u[k] == 0.0) continue;
    double xv = 0.0;
    if (k + 1 < v.size()) xv += a[k + 1] * v[k + 1];
    if (k >= 1) xv += a[k] * v[k - 1];
    s += u[k] * xv;
  }
  return s;
}

class DerivativeOverlap {
 public:
  explicit DerivativeOverlap(const GpswfBasis& b)
      : b_(b), rule_(gauss_jacobi(b.params.alpha, static_cast<std::size_t>(b.matrix_size()) + 2)) {}

  // D_n = <psi'_{n+1}, psi_n>, exact by quadrature (polynomial degree < 2K+3)
  double operator()(int n) {
    const auto& kern = simd::active_kernels();
    std::vector<double> psi(rule_.size()), dpsi(rule_.size());
    kern.jacobi_series(b_.beta[n], b_.recurrence, rule_.nodes, psi);
    kern.jacobi_series_derivative(b_.beta[n + 1], b_.recurrence, rule_.nodes, dpsi);
    return kern.weighted_dot(rule_.weights, dpsi, psi);
  }

 private:
  const GpswfBasis& b_;
  QuadratureRule rule_;
};

}  // namespace

std::vector<MuResult> compute_mu_all(const GpswfBasis& basis, int max_index) {
  if (max_index < 0 || max_index >= basis.count)
    throw PreconditionError("index " + std::to_string(max_index) + " out of range");
  const double c = basis.params.c;
  std::vector<MuResult> out(max_index + 1);
  for (int n = 0; n <= max_index; ++n) out[n].phase_power = n % 4;

  if (c == 0.0) {
    const double mass = weight_mass(basis.params.alpha);
    for (int n = 0; n <= max_index; ++n) {
      out[n].degenerate = true;
      out[n].mu_abs = n == 0 ? mass : 0.0;
      out[n].log_mu_abs = n == 0 ? std::log(mass) : -std::numeric_limits<double>::infinity();
    }
    return out;
  }

  const std::vector<double> grid = half_chebyshev_grid(c);
  if (grid.empty()) throw NumericalError("no valid reference point for mu");
  std::optional<DerivativeOverlap> overlap;

  for (int n = 0; n <= max_index; ++n) {
    const DirectMu d = direct_mu(basis, n, grid);
    const bool take_direct = d.usable && (n == 0 || d.cancellation <= kMaxCancellation);
    if (take_direct) {
      if (!(d.value > 0))
        throw NumericalError("phase of mu_" + std::to_string(n) + " is not i^n");
      out[n].mu_abs = d.value;
      out[n].log_mu_abs = std::log(d.value);
      continue;
    }
    if (n == 0) throw NumericalError("no valid reference point for mu_0");
    // mu_n D_{n-1} = i c mu_{n-1} X_{n-1}
    if (!overlap) overlap.emplace(basis);
    const double x = position_overlap(basis, n - 1);
    const double dd = (*overlap)(n - 1);
    const double ratio = c * x / dd;
    if (!(ratio > 0) || !std::isfinite(ratio))
      throw NumericalError("phase of mu_" + std::to_string(n) + " is not i^n (ratio chain)");
    out[n].log_mu_abs = out[n - 1].log_mu_abs + std::log(ratio);
    out[n].mu_abs = std::exp(out[n].log_mu_abs);
  }
  return out;
}

MuResult compute_mu(const GpswfBasis& basis, int n) { return compute_mu_all(basis, n)[n]; }

double compute_lambda(const GpswfBasis& basis, int n) {
  const MuResult mu = compute_mu(basis, n);
  const double c = basis.params.c;
  return c / (2 * kPi) * mu.mu_abs * mu.mu_abs;
}

std::vector<SpectralTriple> compute_spectrum(const GpswfBasis& basis) {
  const std::vector<MuResult> mu = compute_mu_all(basis, basis.count - 1);
  const double c = basis.params.c;
  std::vector<SpectralTriple> out(mu.size());
  for (std::size_t n = 0; n < mu.size(); ++n) {
    SpectralTriple& t = out[n];
    t.n = static_cast<int>(n);
    t.chi = basis.chi[n];
    t.mu_abs = mu[n].mu_abs;
    t.phase_power = mu[n].phase_power;
    t.degenerate = mu[n].degenerate;
    t.lambda = c / (2 * kPi) * mu[n].mu_abs * mu[n].mu_abs;
    t.log_lambda = c > 0 ? std::log(c / (2 * kPi)) + 2 * mu[n].log_mu_abs
                         : -std::numeric_limits<double>::infinity();
  }
  return out;
}

double trace_analytic(double alpha, double c) {
  const double mass = weight_mass(alpha);
  return c / (2 * kPi) * mass * mass;
}

TraceIdentity trace_identity(const GpswfParams& params) {
  if (!(params.c > 0) || !std::isfinite(params.c)) throw DomainError("trace identity needs c > 0");
  TraceIdentity r;
  r.analytic = trace_analytic(params.alpha, params.c);
  int nmax = static_cast<int>(std::ceil(2 * params.c / kPi)) + 16;
  for (;;) {
    GpswfParams p = params;
    p.matrix_size = 0;
    const GpswfBasis b = compute_basis(p, nmax);
    const std::vector<SpectralTriple> s = compute_spectrum(b);
    int last = -1;
    for (int n = 0; n <= nmax; ++n)
      if (s[n].lambda < 1e-15) {
        last = n;
        break;
      }
    if (last < 0) {
      nmax += 16;
      continue;
    }
    double sum = 0.0;
    for (int n = last; n >= 0; --n) sum += s[n].lambda;
    r.computed = sum;
    r.terms = last + 1;
    break;
  }
  r.relative_gap = std::fabs(r.computed - r.analytic) / r.analytic;
  return r;
}

}  // namespace gpswf
