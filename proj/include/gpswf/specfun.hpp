#pragma once

#include <cstddef>
#include <vector>

namespace gpswf {

double ln_gamma(double x);
double beta(double a, double b);

// J_nu(x) for nu in [0, 400], x in [0, 300].
double bessel_j(double nu, double x);

// Orthonormal Jacobi polynomial P_k^{(a,a)} / sqrt(h_k) on [-1, 1].
double jacobi_eval(int k, double alpha, double x);
double jacobi_eval_derivative(int k, double alpha, double x);
double jacobi_norm_h(int k, double alpha);

// sqrt(pi) Gamma(a+1) / Gamma(a+3/2), the integral of (1-x^2)^a over [-1, 1].
double weight_mass(double alpha);

// K_a(x) = sqrt(pi) 2^{a+1/2} Gamma(a+1) J_{a+1/2}(x) / x^{a+1/2}
double kernel_K(double alpha, double x);

// Coefficients of x p_k = a_{k+1} p_{k+1} + a_k p_{k-1} for the orthonormal
// symmetric Jacobi family, stored for degrees 0..size.
struct JacobiRecurrence {
  double alpha = 0.0;
  double p0 = 0.0;            // constant polynomial 1/sqrt(mass)
  std::vector<double> a;      // a[k], a[0] = 0
  std::vector<double> inv_a;  // 1 / a[k], inv_a[0] unused

  JacobiRecurrence() = default;
  JacobiRecurrence(double alpha, std::size_t max_degree);
  std::size_t max_degree() const { return a.empty() ? 0 : a.size() - 1; }
};

// b_k = a_k^2 = k(k+2a) / ((2k+2a-1)(2k+2a+1)), b_0 = 0
double jacobi_b(int k, double alpha);

}  // namespace gpswf
