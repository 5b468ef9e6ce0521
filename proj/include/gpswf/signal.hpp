#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gpswf {

enum class SignalKind { Sinc, BesselKernel, Sobolev, UserSamples };

// A real function on [-1, 1]. Cheap to copy; sampled data is shared.
struct Signal {
  SignalKind kind = SignalKind::Sinc;
  std::string label;
  double bandwidth = 0.0;  // highest angular frequency present; sizes quadrature
  int parity = -1;         // 0 even, 1 odd, -1 neither
  std::function<double(double)> eval;

  double operator()(double x) const { return eval(x); }
};

// sin(ax)/(ax), 1 at 0
Signal sinc_signal(double a);
// c K_a(cx); Fourier transform (1-(t/c)^2)^a on [-c, c]
Signal bessel_kernel_signal(double alpha, double c);
// sum_{k=1}^{kmax} X_k k^{-s} cos(k pi x), X_k standard normal from `seed`
Signal sobolev_signal(double s, std::uint64_t seed, int kmax);
// piecewise linear through (x, value) samples, constant beyond the end samples
Signal user_samples_signal(std::vector<double> xs, std::vector<double> values);
Signal load_samples_csv(const std::string& path);

// X_1..X_count of the Sobolev signal: SplitMix64 state, uniforms in (0, 1],
// Box-Muller pairs (r cos, r sin) taken in order.
std::vector<double> standard_normals(std::uint64_t seed, int count);

// sinc:a=40 | kernel | sobolev:s=1.0,seed=42,kmax=1000 | file:PATH
// kernel takes alpha and c from the caller.
Signal signal_from_spec(const std::string& spec, double alpha, double c);

}  // namespace gpswf
