#pragma once

#include <cstddef>
#include <vector>

namespace gpswf {

struct SymTridiag {
  std::vector<double> diag;
  std::vector<double> offdiag;  // length diag.size() - 1
  std::size_t size() const { return diag.size(); }
};

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;
};

// Smallest `count` eigenpairs, ascending. Implicit QL with Wilkinson shifts.
// Each eigenvector has its largest-magnitude component positive.
std::vector<EigenPair> symtrid_eigen(const SymTridiag& t, std::size_t count);

// All eigenvalues ascending plus the first component of each eigenvector.
void symtrid_eigen_first_row(const SymTridiag& t, std::vector<double>& values,
                             std::vector<double>& first);

// Recompute the components of an eigenvector of an unreduced block from the
// two-sided continued-fraction ratios, anchored at its largest component.
// Restores relative accuracy of small components; renormalises to unit length.
void refine_eigenvector(const SymTridiag& t, double lambda, std::vector<double>& v);

struct QuadratureRule {
  double alpha = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

// m-point Gauss rule for (1-x^2)^alpha on [-1, 1].
QuadratureRule gauss_jacobi(double alpha, std::size_t m);

}  // namespace gpswf
