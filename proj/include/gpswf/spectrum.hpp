#pragma once

#include <vector>

#include "gpswf/basis.hpp"

namespace gpswf {

struct MuResult {
  double mu_abs = 0.0;
  double log_mu_abs = 0.0;  // natural log; -inf when mu is zero
  int phase_power = 0;      // mu_n = i^phase_power |mu_n|
  bool degenerate = false;  // c == 0
};

struct SpectralTriple {
  int n = 0;
  double chi = 0.0;
  double mu_abs = 0.0;
  double lambda = 0.0;
  double log_lambda = 0.0;  // natural log, usable where lambda underflows
  int phase_power = 0;
  bool degenerate = false;
};

MuResult compute_mu(const GpswfBasis& basis, int n);
double compute_lambda(const GpswfBasis& basis, int n);
// All indices of the basis in one pass (mu of high indices chains from lower ones).
std::vector<SpectralTriple> compute_spectrum(const GpswfBasis& basis);
std::vector<MuResult> compute_mu_all(const GpswfBasis& basis, int max_index);

// Top `count` eigenvalues of the Nystrom discretisation of Q_c on m
// Gauss-Jacobi nodes, descending. Runs in multiprecision so that tiny
// eigenvalues are resolved to double accuracy.
std::vector<double> nystrom_lambda(const GpswfParams& params, int m, int count);
// Trace of the same discretisation (sum of all its eigenvalues).
double nystrom_trace(const GpswfParams& params, int m);

struct TraceIdentity {
  double computed = 0.0;
  double analytic = 0.0;
  double relative_gap = 0.0;
  int terms = 0;
};

double trace_analytic(double alpha, double c);
TraceIdentity trace_identity(const GpswfParams& params);

}  // namespace gpswf
