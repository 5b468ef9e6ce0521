#pragma once

// Shared pieces of the kernel variants; the SIMD paths use these for the
// ragged tail so that every variant rounds the same way.

#include <span>

#include "gpswf/specfun.hpp"

namespace gpswf::simd::detail {

void check_series_args(std::span<const double> coeffs, const JacobiRecurrence& rec,
                       std::span<const double> x, std::span<double> out);
double series_point(std::span<const double> coeffs, const JacobiRecurrence& rec, double x);
double series_derivative_point(std::span<const double> coeffs, const JacobiRecurrence& rec,
                               double x);

}  // namespace gpswf::simd::detail
