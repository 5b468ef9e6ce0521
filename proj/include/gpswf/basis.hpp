#pragma once

#include <span>
#include <utility>
#include <vector>

#include "gpswf/eigtri.hpp"
#include "gpswf/specfun.hpp"

namespace gpswf {

struct GpswfParams {
  double alpha = 0.0;
  double c = 0.0;
  int matrix_size = 0;  // K; 0 picks the default truncation
};

// Computed expansion psi_n = sum_k beta[n][k] p_k for n = 0..count-1, with
// p_k the orthonormal Jacobi polynomials for (1-x^2)^alpha. Immutable once built.
struct GpswfBasis {
  GpswfParams params;  // matrix_size holds the K actually used
  int count = 0;
  std::vector<double> chi;
  std::vector<std::vector<double>> beta;  // each of length K, zero off-parity
  JacobiRecurrence recurrence;            // degrees 0..K+1

  int matrix_size() const { return params.matrix_size; }
  std::span<const double> coefficients(int n) const;
};

int default_matrix_size(int max_index, double c);

std::pair<SymTridiag, SymTridiag> assemble_blocks(const GpswfParams& params);

// Indices 0..max_index. Retries with doubled K (three times) if the
// coefficient tail is not negligible.
GpswfBasis compute_basis(const GpswfParams& params, int max_index);

double eval_psi(const GpswfBasis& basis, int n, double x);
std::vector<double> eval_psi_grid(const GpswfBasis& basis, int n, std::span<const double> grid);
// Term-wise derivative of the expansion.
double eval_psi_derivative(const GpswfBasis& basis, int n, double x);
std::vector<double> eval_psi_derivative_grid(const GpswfBasis& basis, int n,
                                             std::span<const double> grid);

}  // namespace gpswf
