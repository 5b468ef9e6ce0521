#include "gpswf/eigtri.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gpswf/errors.hpp"
#include "gpswf/specfun.hpp"

namespace gpswf {

namespace {

constexpr int kMaxIterations = 50;

void validate(const SymTridiag& t) {
  const std::size_t m = t.diag.size();
  if (m == 0) throw PreconditionError("empty tridiagonal matrix");
  if (t.offdiag.size() + 1 != m)
    throw PreconditionError("offdiag length must be diag length - 1");
  for (double v : t.diag)
    if (!std::isfinite(v)) throw DomainError("non-finite diagonal entry");
  for (double v : t.offdiag)
    if (!std::isfinite(v)) throw DomainError("non-finite off-diagonal entry");
}

// Implicit QL on (d, e). z holds `rows` rows of the eigenvector matrix stored
// column-major (column i contiguous, length rows); rotations act on columns.
void ql_implicit(std::vector<double>& d, std::vector<double> e_in, std::vector<double>& z,
                 std::size_t rows) {
  const std::size_t n = d.size();
  std::vector<double> e(n, 0.0);
  std::copy(e_in.begin(), e_in.end(), e.begin());

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) + dd == dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxIterations)
          throw NumericalError("tridiagonal QL did not converge for eigenvalue index " +
                               std::to_string(l));
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool early = false;
        for (std::size_t ii = m; ii-- > l;) {
          double f = s * e[ii];
          const double b = c * e[ii];
          r = std::hypot(f, g);
          e[ii + 1] = r;
          if (r == 0.0) {
            d[ii + 1] -= p;
            e[m] = 0.0;
            early = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[ii + 1] - p;
          r = (d[ii] - g) * s + 2.0 * c * b;
          p = s * r;
          d[ii + 1] = g + p;
          g = c * r - b;
          double* zi = z.data() + ii * rows;
          double* zj = zi + rows;
          for (std::size_t k = 0; k < rows; ++k) {
            f = zj[k];
            zj[k] = s * zi[k] + c * f;
            zi[k] = c * zi[k] - s * f;
          }
        }
        if (early) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

std::vector<EigenPair> symtrid_eigen(const SymTridiag& t, std::size_t count) {
  validate(t);
  const std::size_t m = t.size();
  if (count > m) throw PreconditionError("count exceeds matrix size");

  std::vector<double> d = t.diag;
  std::vector<double> z(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) z[i * m + i] = 1.0;
  ql_implicit(d, t.offdiag, z, m);

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  std::vector<EigenPair> out(count);
  for (std::size_t j = 0; j < count; ++j) {
    const std::size_t col = order[j];
    out[j].value = d[col];
    std::vector<double>& v = out[j].vector;
    v.assign(z.begin() + col * m, z.begin() + (col + 1) * m);
    std::size_t big = 0;
    for (std::size_t k = 1; k < m; ++k)
      if (std::fabs(v[k]) > std::fabs(v[big])) big = k;
    if (v[big] < 0)
      for (double& x : v) x = -x;
  }
  return out;
}

void symtrid_eigen_first_row(const SymTridiag& t, std::vector<double>& values,
                             std::vector<double>& first) {
  validate(t);
  const std::size_t m = t.size();
  std::vector<double> d = t.diag;
  std::vector<double> z(m, 0.0);
  z[0] = 1.0;
  ql_implicit(d, t.offdiag, z, 1);

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  values.resize(m);
  first.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    values[j] = d[order[j]];
    first[j] = z[order[j]];
  }
}

void refine_eigenvector(const SymTridiag& t, double lambda, std::vector<double>& v) {
  const std::size_t m = t.size();
  if (v.size() != m) throw PreconditionError("eigenvector length mismatch");
  if (m < 2) return;
  const auto& d = t.diag;
  const auto& e = t.offdiag;
  auto safe = [](double x) { return x == 0.0 ? 1e-300 : x; };

  std::size_t p = 0;
  for (std::size_t k = 1; k < m; ++k)
    if (std::fabs(v[k]) > std::fabs(v[p])) p = k;

  // rows above the anchor: v_k = rho_k v_{k+1}
  if (p > 0) {
    std::vector<double> rho(p);
    rho[0] = -e[0] / safe(d[0] - lambda);
    for (std::size_t k = 1; k < p; ++k)
      rho[k] = -e[k] / safe((d[k] - lambda) + e[k - 1] * rho[k - 1]);
    for (std::size_t k = p; k-- > 0;) v[k] = rho[k] * v[k + 1];
  }
  // rows below the anchor: v_k = sigma_k v_{k-1}
  if (p + 1 < m) {
    std::vector<double> sigma(m);
    sigma[m - 1] = -e[m - 2] / safe(d[m - 1] - lambda);
    for (std::size_t k = m - 1; k-- > p + 1;)
      sigma[k] = -e[k - 1] / safe((d[k] - lambda) + e[k] * sigma[k + 1]);
    for (std::size_t k = p + 1; k < m; ++k) v[k] = sigma[k] * v[k - 1];
  }
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
}

QuadratureRule gauss_jacobi(double alpha, std::size_t m) {
  if (!(alpha > -1.0) || !std::isfinite(alpha)) throw DomainError("gauss_jacobi needs alpha > -1");
  if (m < 1) throw PreconditionError("gauss_jacobi needs m >= 1");

  QuadratureRule rule;
  rule.alpha = alpha;
  const double mass = weight_mass(alpha);
  if (m == 1) {
    rule.nodes = {0.0};
    rule.weights = {mass};
    return rule;
  }

  SymTridiag jm;
  jm.diag.assign(m, 0.0);
  jm.offdiag.resize(m - 1);
  for (std::size_t k = 1; k < m; ++k) jm.offdiag[k - 1] = std::sqrt(jacobi_b(static_cast<int>(k), alpha));
  std::vector<double> x, z0;
  symtrid_eigen_first_row(jm, x, z0);

  // Newton polish on p_m and Christoffel weights 1 / sum p_k^2: the QL first
  // components carry absolute error only, which hurts the tiny edge weights.
  const JacobiRecurrence rec(alpha, m);
  const std::size_t half = (m + 1) / 2;
  std::vector<double> nodes(m), weights(m);
  for (std::size_t i = 0; i < half; ++i) {
    double xi = 0.5 * (x[m - 1 - i] - x[i]);  // nonnegative node, mirrored pair
    if (m % 2 == 1 && i == half - 1) xi = 0.0;
    const bool centre = (m % 2 == 1 && i == half - 1);
    double christoffel = 0.0;
    for (int step = 0; step < 3; ++step) {
      double prev = 0.0, p = rec.p0, dprev = 0.0, dp = 0.0;
      christoffel = p * p;
      for (std::size_t k = 0; k < m; ++k) {
        const double next = (xi * p - rec.a[k] * prev) * rec.inv_a[k + 1];
        const double dnext = (p + xi * dp - rec.a[k] * dprev) * rec.inv_a[k + 1];
        prev = p;
        p = next;
        dprev = dp;
        dp = dnext;
        if (k + 1 < m) christoffel += p * p;
      }
      if (step == 2 || centre) break;
      xi -= p / dp;
    }
    nodes[m - 1 - i] = xi;
    nodes[i] = -xi;
    weights[i] = weights[m - 1 - i] = 1.0 / christoffel;
  }
  rule.nodes = std::move(nodes);
  rule.weights = std::move(weights);
  return rule;
}

}  // namespace gpswf
