#include "gpswf/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "gpswf/errors.hpp"

namespace gpswf {

namespace {

constexpr double kLnPi = 1.1447298858494002;
constexpr double kLn2 = std::numbers::ln2;

void require_alpha(double alpha) {
  if (!(alpha > -1.0) || !std::isfinite(alpha))
    throw DomainError("alpha must be a finite real > -1, got " + std::to_string(alpha));
}

double lgam(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

// log h_k for the (a, a) Jacobi family. The k = 0 case folds (2a+1) Gamma(2a+1)
// into Gamma(2a+2) so that a = -1/2 stays finite.
double log_h(int k, double alpha) {
  if (k == 0) return (2 * alpha + 1) * kLn2 + 2 * lgam(alpha + 1) - lgam(2 * alpha + 2);
  return (2 * alpha + 1) * kLn2 + 2 * lgam(k + alpha + 1) - lgam(k + 1.0) -
         std::log(2 * k + 2 * alpha + 1) - lgam(k + 2 * alpha + 1);
}

double bessel_series(double nu, double x) {
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 1000; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
  }
  const double log_pref = nu * std::log(0.5 * x) - lgam(nu + 1);
  return sum * std::exp(log_pref);
}

// Miller backward recurrence; the sequence J_{nu0+k} is normalised with
// (x/2)^nu0 = Gamma(nu0+1) [J_nu0 + sum_{m>=1} (nu0+2m) g_m J_{nu0+2m}],
// g_m = Gamma(nu0+m) / (m! Gamma(nu0+1)).
double bessel_miller(double nu, double x) {
  const int n = static_cast<int>(std::floor(nu));
  const double nu0 = nu - n;
  const double big = std::max(nu, x);
  int top = static_cast<int>(std::ceil(big + 16.0 * std::cbrt(big) + 30.0));
  if (top % 2) ++top;

  std::vector<double> g(top / 2 + 1, 0.0);
  g[0] = 1.0;
  if (g.size() > 1) g[1] = 1.0;
  for (std::size_t m = 1; m + 1 < g.size(); ++m) g[m + 1] = g[m] * (nu0 + m) / (m + 1.0);

  constexpr double kRescale = 1e-250;
  constexpr double kThreshold = 1e250;
  double j_up = 0.0;      // J_{k+1}
  double j = 1e-300;      // J_k, k = top
  double norm = (nu0 + top) * g[top / 2] * j;
  int rescales = 0;
  double captured = (top == n) ? j : 0.0;
  int captured_at = 0;

  for (int k = top; k >= 1; --k) {
    const double j_down = (2.0 * (nu0 + k) / x) * j - j_up;
    j_up = j;
    j = j_down;
    const int kd = k - 1;
    if (kd % 2 == 0) norm += (kd == 0 ? 1.0 : (nu0 + kd) * g[kd / 2]) * j;
    if (kd == n) {
      captured = j;
      captured_at = rescales;
    }
    if (std::fabs(j) > kThreshold) {
      j *= kRescale;
      j_up *= kRescale;
      norm *= kRescale;
      ++rescales;
    }
  }
  if (captured == 0.0) return 0.0;
  const double log_abs = std::log(std::fabs(captured)) +
                         (rescales - captured_at) * std::log(kRescale) +
                         nu0 * std::log(0.5 * x) - lgam(nu0 + 1) - std::log(std::fabs(norm));
  const double sign = ((captured < 0) != (norm < 0)) ? -1.0 : 1.0;
  return sign * std::exp(log_abs);
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0) || !std::isfinite(x))
    throw DomainError("ln_gamma needs x > 0, got " + std::to_string(x));
  return lgam(x);
}

double beta(double a, double b) {
  if (!(a > 0) || !(b > 0) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("beta needs a, b > 0");
  return std::exp(lgam(a) + lgam(b) - lgam(a + b));
}

double bessel_j(double nu, double x) {
  if (!(nu >= 0) || !(x >= 0)) throw DomainError("bessel_j needs nu >= 0 and x >= 0");
  if (nu > 400.0 || x > 300.0)
    throw RangeError("bessel_j outside nu <= 400, x <= 300: nu=" + std::to_string(nu) +
                     " x=" + std::to_string(x));
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (x * x <= 16.0 * (nu + 1.0)) return bessel_series(nu, x);
  return bessel_miller(nu, x);
}

double jacobi_b(int k, double alpha) {
  if (k <= 0) return 0.0;
  if (k == 1) return 1.0 / (2 * alpha + 3);
  return k * (k + 2 * alpha) / ((2 * k + 2 * alpha - 1) * (2 * k + 2 * alpha + 1));
}

double weight_mass(double alpha) {
  require_alpha(alpha);
  return std::exp(0.5 * kLnPi + lgam(alpha + 1) - lgam(alpha + 1.5));
}

JacobiRecurrence::JacobiRecurrence(double alpha_, std::size_t max_degree)
    : alpha(alpha_), a(max_degree + 1, 0.0), inv_a(max_degree + 1, 0.0) {
  require_alpha(alpha);
  p0 = 1.0 / std::sqrt(weight_mass(alpha));
  for (std::size_t k = 1; k <= max_degree; ++k) {
    a[k] = std::sqrt(jacobi_b(static_cast<int>(k), alpha));
    inv_a[k] = 1.0 / a[k];
  }
}

double jacobi_norm_h(int k, double alpha) {
  require_alpha(alpha);
  if (k < 0) throw DomainError("jacobi_norm_h needs k >= 0");
  return std::exp(log_h(k, alpha));
}

double jacobi_eval(int k, double alpha, double x) {
  require_alpha(alpha);
  if (k < 0) throw DomainError("jacobi_eval needs k >= 0");
  if (!(std::fabs(x) <= 1.0)) throw DomainError("jacobi_eval needs |x| <= 1");
  double prev = 0.0;
  double p = 1.0 / std::sqrt(weight_mass(alpha));
  double a_j = 0.0;
  for (int j = 0; j < k; ++j) {
    const double a_next = std::sqrt(jacobi_b(j + 1, alpha));
    const double next = (x * p - a_j * prev) / a_next;
    prev = p;
    p = next;
    a_j = a_next;
  }
  return p;
}

double jacobi_eval_derivative(int k, double alpha, double x) {
  require_alpha(alpha);
  if (k < 0) throw DomainError("jacobi_eval_derivative needs k >= 0");
  if (!(std::fabs(x) <= 1.0)) throw DomainError("jacobi_eval_derivative needs |x| <= 1");
  if (k == 0) return 0.0;
  // d/dx P_k^{(a,a)} = (k+2a+1)/2 P_{k-1}^{(a+1,a+1)}
  const double scale =
      0.5 * (k + 2 * alpha + 1) * std::exp(0.5 * (log_h(k - 1, alpha + 1) - log_h(k, alpha)));
  return scale * jacobi_eval(k - 1, alpha + 1, x);
}

double kernel_K(double alpha, double x) {
  require_alpha(alpha);
  const double ax = std::fabs(x);
  if (std::isnan(ax)) throw DomainError("kernel_K argument is NaN");
  const double mass = weight_mass(alpha);
  if (ax < 1e-3) {
    const double q = -0.25 * ax * ax;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 6; ++k) {
      term *= q / (k * (alpha + 0.5 + k));
      sum += term;
    }
    return mass * sum;
  }
  const double nu = alpha + 0.5;
  double j;
  if (nu >= 0.0) {
    j = bessel_j(nu, ax);
  } else {
    // orders in (-1/2, 0): one upward step from nu+1, nu+2
    j = 2.0 * (nu + 1) / ax * bessel_j(nu + 1, ax) - bessel_j(nu + 2, ax);
  }
  const double pref = 0.5 * kLnPi + nu * kLn2 + lgam(alpha + 1);
  return std::exp(pref) * j / std::pow(ax, nu);
}

}  // namespace gpswf
