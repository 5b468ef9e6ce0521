#include <cstddef>
#include <vector>

#include "gpswf/errors.hpp"
#include "gpswf/kernels.hpp"
#include "kernels_impl.hpp"

namespace gpswf::simd {

namespace detail {

void check_series_args(std::span<const double> coeffs, const JacobiRecurrence& rec,
                       std::span<const double> x, std::span<double> out) {
  if (out.size() != x.size()) throw PreconditionError("output length must match grid length");
  if (coeffs.size() > rec.max_degree() + 1)
    throw PreconditionError("series longer than the recurrence table");
}

double series_point(std::span<const double> coeffs, const JacobiRecurrence& rec, double x) {
  const std::size_t n = coeffs.size();
  if (n == 0) return 0.0;
  const double* a = rec.a.data();
  const double* ia = rec.inv_a.data();
  double prev = 0.0;
  double p = rec.p0;
  double sum = coeffs[0] * p;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double next = (x * p - a[k] * prev) * ia[k + 1];
    prev = p;
    p = next;
    sum = sum + coeffs[k + 1] * next;
  }
  return sum;
}

double series_derivative_point(std::span<const double> coeffs, const JacobiRecurrence& rec,
                               double x) {
  const std::size_t n = coeffs.size();
  const double* a = rec.a.data();
  const double* ia = rec.inv_a.data();
  double prev = 0.0, p = rec.p0, dprev = 0.0, dp = 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double next = (x * p - a[k] * prev) * ia[k + 1];
    const double dnext = ((p + x * dp) - a[k] * dprev) * ia[k + 1];
    prev = p;
    p = next;
    dprev = dp;
    dp = dnext;
    sum = sum + coeffs[k + 1] * dnext;
  }
  return sum;
}

}  // namespace detail

namespace {

void series(std::span<const double> coeffs, const JacobiRecurrence& rec,
            std::span<const double> x, std::span<double> out) {
  detail::check_series_args(coeffs, rec, x, out);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = detail::series_point(coeffs, rec, x[i]);
}

void series_derivative(std::span<const double> coeffs, const JacobiRecurrence& rec,
                       std::span<const double> x, std::span<double> out) {
  detail::check_series_args(coeffs, rec, x, out);
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = detail::series_derivative_point(coeffs, rec, x[i]);
}

void moments(const JacobiRecurrence& rec, std::span<const double> x, std::span<const double> f,
             std::span<double> out) {
  if (f.size() != x.size()) throw PreconditionError("moment weights must match grid length");
  if (out.size() > rec.max_degree() + 1) throw PreconditionError("too many moments requested");
  const std::size_t n = x.size();
  std::vector<double> prev(n, 0.0), cur(n, rec.p0);
  for (std::size_t k = 0; k < out.size(); ++k) {
    double s[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) s[i % 4] = s[i % 4] + f[i] * cur[i];
    out[k] = (s[0] + s[1]) + (s[2] + s[3]);
    if (k + 1 == out.size()) break;
    const double ak = rec.a[k];
    const double inv = rec.inv_a[k + 1];
    for (std::size_t i = 0; i < n; ++i) {
      const double next = (x[i] * cur[i] - ak * prev[i]) * inv;
      prev[i] = cur[i];
      cur[i] = next;
    }
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw PreconditionError("dot length mismatch");
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s[i % 4] = s[i % 4] + a[i] * b[i];
  return (s[0] + s[1]) + (s[2] + s[3]);
}

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
  if (a.size() != b.size() || w.size() != a.size())
    throw PreconditionError("weighted_dot length mismatch");
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s[i % 4] = s[i % 4] + (w[i] * a[i]) * b[i];
  return (s[0] + s[1]) + (s[2] + s[3]);
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", series, series_derivative, moments, dot, weighted_dot};
  return table;
}

}  // namespace gpswf::simd
