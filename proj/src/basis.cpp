#include "gpswf/basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gpswf/errors.hpp"
#include "gpswf/kernels.hpp"

namespace gpswf {

namespace {

constexpr double kTailTolerance = 1e-13;
constexpr int kRetries = 3;

void validate_params(const GpswfParams& p) {
  if (!(p.alpha > -1.0) || !std::isfinite(p.alpha))
    throw DomainError("alpha must be a finite real > -1");
  if (!(p.c >= 0.0) || !std::isfinite(p.c)) throw DomainError("c must be a finite real >= 0");
}

void check_index(const GpswfBasis& b, int n) {
  if (n < 0 || n >= b.count)
    throw PreconditionError("index " + std::to_string(n) + " out of range [0, " +
                            std::to_string(b.count) + ")");
}

void check_point(double x) {
  if (!(std::fabs(x) <= 1.0)) throw DomainError("evaluation point outside [-1, 1]");
}

struct BlockSolution {
  std::vector<EigenPair> pairs;
};

BlockSolution solve_block(const SymTridiag& block, std::size_t wanted) {
  BlockSolution s;
  wanted = std::min(wanted, block.size());
  s.pairs = symtrid_eigen(block, wanted);
  for (auto& pr : s.pairs) refine_eigenvector(block, pr.value, pr.vector);
  return s;
}

struct Attempt {
  GpswfBasis basis;
  double worst_tail = 0.0;
  bool ok = false;
};

Attempt attempt(const GpswfParams& params, int max_index) {
  const int K = params.matrix_size;
  auto [even, odd] = assemble_blocks(params);
  const std::size_t n_even = static_cast<std::size_t>(max_index / 2 + 1);
  const std::size_t n_odd = static_cast<std::size_t>((max_index + 1) / 2);
  // one extra per parity so that interlacing of the merged list is checked
  const BlockSolution se = solve_block(even, n_even + 1);
  const BlockSolution so = solve_block(odd, n_odd + 1);

  struct Entry {
    double value;
    int parity;
    std::size_t idx;
  };
  std::vector<Entry> merged;
  for (std::size_t i = 0; i < se.pairs.size(); ++i) merged.push_back({se.pairs[i].value, 0, i});
  for (std::size_t i = 0; i < so.pairs.size(); ++i) merged.push_back({so.pairs[i].value, 1, i});
  std::stable_sort(merged.begin(), merged.end(),
                   [](const Entry& a, const Entry& b) { return a.value < b.value; });
  if (merged.size() < static_cast<std::size_t>(max_index + 1))
    throw PreconditionError("matrix size too small for the requested index");

  Attempt out;
  GpswfBasis& b = out.basis;
  b.params = params;
  b.count = max_index + 1;
  b.recurrence = JacobiRecurrence(params.alpha, static_cast<std::size_t>(K) + 1);
  b.chi.resize(b.count);
  b.beta.assign(b.count, std::vector<double>(K, 0.0));

  const auto& kern = simd::active_kernels();
  const double one = 1.0;
  for (int n = 0; n < b.count; ++n) {
    const Entry& e = merged[n];
    if (e.parity != n % 2)
      throw NumericalError("parity of index " + std::to_string(n) +
                           " does not alternate (even/odd spectra fail to interlace)");
    const std::vector<double>& v = (e.parity == 0 ? se : so).pairs[e.idx].vector;
    std::vector<double>& beta = b.beta[n];
    double biggest = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      beta[2 * j + e.parity] = v[j];
      biggest = std::max(biggest, std::fabs(v[j]));
    }
    out.worst_tail = std::max(out.worst_tail, std::fabs(v.back()) / biggest);
    b.chi[n] = e.value;

    double at_one = 0.0;
    kern.jacobi_series(beta, b.recurrence, std::span<const double>(&one, 1),
                       std::span<double>(&at_one, 1));
    if (at_one < 0)
      for (double& x : beta) x = -x;
  }
  for (int n = 1; n < b.count; ++n)
    if (!(b.chi[n] > b.chi[n - 1]))
      throw NumericalError("chi not strictly increasing at index " + std::to_string(n));
  out.ok = out.worst_tail <= kTailTolerance;
  return out;
}

// d/dx p_k^{(a)} = s_k p_{k-1}^{(a+1)}
std::vector<double> derivative_coefficients(const GpswfBasis& b, int n) {
  const double alpha = b.params.alpha;
  const std::vector<double>& beta = b.beta[n];
  std::vector<double> g(beta.size() > 1 ? beta.size() - 1 : 1, 0.0);
  for (std::size_t k = 1; k < beta.size(); ++k) {
    if (beta[k] == 0.0) continue;
    const int ki = static_cast<int>(k);
    const double s = 0.5 * (ki + 2 * alpha + 1) *
                     std::sqrt(jacobi_norm_h(ki - 1, alpha + 1) / jacobi_norm_h(ki, alpha));
    g[k - 1] = beta[k] * s;
  }
  return g;
}

}  // namespace

std::span<const double> GpswfBasis::coefficients(int n) const {
  check_index(*this, n);
  return beta[n];
}

int default_matrix_size(int max_index, double c) {
  int k = std::max(2 * (max_index + 1), static_cast<int>(std::ceil(1.2 * (max_index + c))) + 40);
  if (k % 2) ++k;
  return std::max(k, 4);
}

std::pair<SymTridiag, SymTridiag> assemble_blocks(const GpswfParams& params) {
  validate_params(params);
  const int K = params.matrix_size;
  if (K < 4) throw PreconditionError("matrix size K must be at least 4");
  const double a = params.alpha;
  const double c2 = params.c * params.c;
  SymTridiag blocks[2];
  for (int parity = 0; parity < 2; ++parity) {
    SymTridiag& t = blocks[parity];
    for (int k = parity; k < K; k += 2) {
      t.diag.push_back(k * (k + 2 * a + 1) + c2 * (jacobi_b(k, a) + jacobi_b(k + 1, a)));
      if (k + 2 < K)
        t.offdiag.push_back(c2 * std::sqrt(jacobi_b(k + 1, a) * jacobi_b(k + 2, a)));
    }
  }
  return {std::move(blocks[0]), std::move(blocks[1])};
}

GpswfBasis compute_basis(const GpswfParams& params, int max_index) {
  validate_params(params);
  if (max_index < 0) throw PreconditionError("max index must be >= 0");
  GpswfParams p = params;
  p.matrix_size = std::max(default_matrix_size(max_index, p.c), params.matrix_size);
  if (p.matrix_size % 2) ++p.matrix_size;

  double worst = 0.0;
  for (int tries = 0; tries <= kRetries; ++tries) {
    Attempt a = attempt(p, max_index);
    if (a.ok) return std::move(a.basis);
    worst = a.worst_tail;
    p.matrix_size *= 2;
  }
  throw TruncationError("coefficient tail did not fall below 1e-13 after " +
                            std::to_string(kRetries) + " doublings (worst tail " +
                            std::to_string(worst) + ")",
                        worst);
}

double eval_psi(const GpswfBasis& basis, int n, double x) {
  check_index(basis, n);
  check_point(x);
  double out = 0.0;
  simd::active_kernels().jacobi_series(basis.beta[n], basis.recurrence,
                                       std::span<const double>(&x, 1), std::span<double>(&out, 1));
  return out;
}

std::vector<double> eval_psi_grid(const GpswfBasis& basis, int n, std::span<const double> grid) {
  check_index(basis, n);
  for (double x : grid) check_point(x);
  std::vector<double> out(grid.size());
  simd::active_kernels().jacobi_series(basis.beta[n], basis.recurrence, grid, out);
  return out;
}

double eval_psi_derivative(const GpswfBasis& basis, int n, double x) {
  return eval_psi_derivative_grid(basis, n, std::span<const double>(&x, 1))[0];
}

std::vector<double> eval_psi_derivative_grid(const GpswfBasis& basis, int n,
                                             std::span<const double> grid) {
  check_index(basis, n);
  for (double x : grid) check_point(x);
  const std::vector<double> g = derivative_coefficients(basis, n);
  const JacobiRecurrence shifted(basis.params.alpha + 1, g.size());
  std::vector<double> out(grid.size());
  simd::active_kernels().jacobi_series(g, shifted, grid, out);
  return out;
}

}  // namespace gpswf
