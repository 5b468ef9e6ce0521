#include <immintrin.h>

#include <cstddef>
#include <vector>

#include "gpswf/errors.hpp"
#include "gpswf/kernels.hpp"
#include "kernels_impl.hpp"

namespace gpswf::simd {

namespace {

// Four grid points per register; the last x.size() % 4 points go through the
// scalar routine, which performs the same operations in the same order.
void series(std::span<const double> coeffs, const JacobiRecurrence& rec,
            std::span<const double> x, std::span<double> out) {
  detail::check_series_args(coeffs, rec, x, out);
  const std::size_t n = coeffs.size();
  const std::size_t m = x.size();
  const std::size_t body = m & ~std::size_t{3};
  if (n == 0) {
    for (std::size_t i = 0; i < m; ++i) out[i] = 0.0;
    return;
  }
  const double* a = rec.a.data();
  const double* ia = rec.inv_a.data();
  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x.data() + i);
    __m256d prev = _mm256_setzero_pd();
    __m256d p = _mm256_set1_pd(rec.p0);
    __m256d sum = _mm256_mul_pd(_mm256_set1_pd(coeffs[0]), p);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const __m256d t = _mm256_sub_pd(_mm256_mul_pd(xv, p), _mm256_mul_pd(_mm256_set1_pd(a[k]), prev));
      const __m256d next = _mm256_mul_pd(t, _mm256_set1_pd(ia[k + 1]));
      prev = p;
      p = next;
      sum = _mm256_add_pd(sum, _mm256_mul_pd(_mm256_set1_pd(coeffs[k + 1]), next));
    }
    _mm256_storeu_pd(out.data() + i, sum);
  }
  for (std::size_t i = body; i < m; ++i) out[i] = detail::series_point(coeffs, rec, x[i]);
}

void series_derivative(std::span<const double> coeffs, const JacobiRecurrence& rec,
                       std::span<const double> x, std::span<double> out) {
  detail::check_series_args(coeffs, rec, x, out);
  const std::size_t n = coeffs.size();
  const std::size_t m = x.size();
  const std::size_t body = m & ~std::size_t{3};
  const double* a = rec.a.data();
  const double* ia = rec.inv_a.data();
  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x.data() + i);
    __m256d prev = _mm256_setzero_pd();
    __m256d p = _mm256_set1_pd(rec.p0);
    __m256d dprev = _mm256_setzero_pd();
    __m256d dp = _mm256_setzero_pd();
    __m256d sum = _mm256_setzero_pd();
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const __m256d ak = _mm256_set1_pd(a[k]);
      const __m256d inv = _mm256_set1_pd(ia[k + 1]);
      const __m256d next = _mm256_mul_pd(_mm256_sub_pd(_mm256_mul_pd(xv, p), _mm256_mul_pd(ak, prev)), inv);
      const __m256d dnext = _mm256_mul_pd(
          _mm256_sub_pd(_mm256_add_pd(p, _mm256_mul_pd(xv, dp)), _mm256_mul_pd(ak, dprev)), inv);
      prev = p;
      p = next;
      dprev = dp;
      dp = dnext;
      sum = _mm256_add_pd(sum, _mm256_mul_pd(_mm256_set1_pd(coeffs[k + 1]), dnext));
    }
    _mm256_storeu_pd(out.data() + i, sum);
  }
  for (std::size_t i = body; i < m; ++i) out[i] = detail::series_derivative_point(coeffs, rec, x[i]);
}

void moments(const JacobiRecurrence& rec, std::span<const double> x, std::span<const double> f,
             std::span<double> out) {
  if (f.size() != x.size()) throw PreconditionError("moment weights must match grid length");
  if (out.size() > rec.max_degree() + 1) throw PreconditionError("too many moments requested");
  const std::size_t n = x.size();
  const std::size_t body = n & ~std::size_t{3};
  std::vector<double> prev(n, 0.0), cur(n, rec.p0);
  for (std::size_t k = 0; k < out.size(); ++k) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < body; i += 4)
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(f.data() + i), _mm256_loadu_pd(cur.data() + i)));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    for (std::size_t i = body; i < n; ++i) lanes[i % 4] = lanes[i % 4] + f[i] * cur[i];
    out[k] = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    if (k + 1 == out.size()) break;
    const __m256d ak = _mm256_set1_pd(rec.a[k]);
    const __m256d inv = _mm256_set1_pd(rec.inv_a[k + 1]);
    for (std::size_t i = 0; i < body; i += 4) {
      const __m256d c = _mm256_loadu_pd(cur.data() + i);
      const __m256d pv = _mm256_loadu_pd(prev.data() + i);
      const __m256d next =
          _mm256_mul_pd(_mm256_sub_pd(_mm256_mul_pd(_mm256_loadu_pd(x.data() + i), c), _mm256_mul_pd(ak, pv)), inv);
      _mm256_storeu_pd(prev.data() + i, c);
      _mm256_storeu_pd(cur.data() + i, next);
    }
    for (std::size_t i = body; i < n; ++i) {
      const double next = (x[i] * cur[i] - rec.a[k] * prev[i]) * rec.inv_a[k + 1];
      prev[i] = cur[i];
      cur[i] = next;
    }
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw PreconditionError("dot length mismatch");
  const std::size_t n = a.size();
  const std::size_t body = n & ~std::size_t{3};
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += 4)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  for (std::size_t i = body; i < n; ++i) lanes[i % 4] = lanes[i % 4] + a[i] * b[i];
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
  if (a.size() != b.size() || w.size() != a.size())
    throw PreconditionError("weighted_dot length mismatch");
  const std::size_t n = a.size();
  const std::size_t body = n & ~std::size_t{3};
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d wa = _mm256_mul_pd(_mm256_loadu_pd(w.data() + i), _mm256_loadu_pd(a.data() + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(wa, _mm256_loadu_pd(b.data() + i)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  for (std::size_t i = body; i < n; ++i) lanes[i % 4] = lanes[i % 4] + (w[i] * a[i]) * b[i];
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace

const KernelTable* avx2_kernels_compiled() {
  static const KernelTable table{"avx2", series, series_derivative, moments, dot, weighted_dot};
  return &table;
}

}  // namespace gpswf::simd
