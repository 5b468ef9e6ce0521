#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gpswf/basis.hpp"
#include "gpswf/signal.hpp"

namespace gpswf {

struct ProjectionReport {
  int N = 0;
  std::vector<double> coefficients;  // <f, psi_n>, n = 0..N, unit-norm psi
  double err_weighted_l2 = 0.0;      // same rule as the coefficients
  double err_sup_grid = 0.0;         // 2001 uniform points
  double signal_norm = 0.0;          // ||f|| in L^2(I, w_a), same rule
  std::optional<double> bound_rhs;   // sqrt(lambda_N) ||f||, no constant
  bool resolution_warning = false;
  std::string warning;
};

// Gauss-Jacobi rule large enough for the basis and for the signal's bandwidth.
QuadratureRule projection_rule(const GpswfBasis& basis, const Signal& f);

// S_N f = sum_{n<=N} <f, psi_n> psi_n. Needs N < basis.count and a rule with at
// least 2K nodes.
ProjectionReport project(const GpswfBasis& basis, const Signal& f, int N,
                         const QuadratureRule& rule);

// S_N f at arbitrary points from projection coefficients.
std::vector<double> reconstruct(const GpswfBasis& basis, std::span<const double> coefficients,
                                std::span<const double> x);

struct SobolevNorm {
  double value = 0.0;
  bool resolution_warning = false;
};

// sqrt(sum_{k<=kmax} |<f, p_k>|^2 (1+k^2)^s) with the orthonormal Jacobi p_k.
SobolevNorm sobolev_norm(const Signal& f, double s, double alpha, int kmax,
                         const QuadratureRule& rule);

enum class ApproxBoundKind {
  Approxx1,  // L2, f in B_c^(a): sqrt(lambda_N) norm
  Approxx2,  // sup, f in B_c^(a): sqrt(lambda_N) chi_N^{1/2+a/2} norm
  Approx1,   // L2, f in L2(R): sqrt(lambda_N) chi_N^{(1+a)/2} norm
  Approx2,   // sup, f in L2(R): sqrt(lambda_N) chi_N^{1+a/2} norm
};

// Structural part of the approximation bounds, without the unspecified C_1.
double approx_error_bound_rhs(ApproxBoundKind kind, double lambda_n, double chi_n, double alpha,
                              double c, double norm);

struct Deflection {
  double value = 0.0;
  double bound = 0.0;  // eps2 / (1 - lambda_N)
  int which_case = 1;  // 1: 1-eps2 <= lambda_N, 2 otherwise
  bool clamped = false;  // case-2 formula was negative and reported as 0
  bool within_bound = true;  // value <= max(1, bound)
};

// lambdas descending, size > N, 0 < eps2 < 1.
Deflection deflection(std::span<const double> lambdas, int N, double eps2);

}  // namespace gpswf
