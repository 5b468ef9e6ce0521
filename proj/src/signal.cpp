#include "gpswf/signal.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <numbers>
#include <numeric>
#include <sstream>

#include "gpswf/errors.hpp"
#include "gpswf/specfun.hpp"

namespace gpswf {

namespace {

constexpr double kPi = std::numbers::pi;

struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  // (0, 1], never 0 so the log in Box-Muller is finite
  double uniform() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }
};

bool parse_double(std::string_view s, double& out) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::map<std::string, std::string> parse_options(const std::string& body, const std::string& spec) {
  std::map<std::string, std::string> kv;
  if (body.empty()) return kv;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw DomainError("bad signal option '" + item + "' in '" + spec + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

double take_real(std::map<std::string, std::string>& kv, const std::string& key, double fallback,
                 bool required) {
  auto it = kv.find(key);
  if (it == kv.end()) {
    if (required) throw DomainError("signal option '" + key + "' is required");
    return fallback;
  }
  double v;
  if (!parse_double(it->second, v) || !std::isfinite(v))
    throw DomainError("signal option '" + key + "' is not a number: " + it->second);
  kv.erase(it);
  return v;
}

void reject_leftovers(const std::map<std::string, std::string>& kv) {
  if (!kv.empty()) throw DomainError("unknown signal option '" + kv.begin()->first + "'");
}

}  // namespace

Signal sinc_signal(double a) {
  if (!(a > 0) || !std::isfinite(a)) throw DomainError("sinc needs a > 0");
  Signal s;
  s.kind = SignalKind::Sinc;
  s.label = "sinc(a=" + std::to_string(a) + ")";
  s.bandwidth = a;
  s.parity = 0;
  s.eval = [a](double x) {
    const double t = a * x;
    if (std::fabs(t) < 1e-4) return 1.0 - t * t / 6.0 + t * t * t * t / 120.0;
    return std::sin(t) / t;
  };
  return s;
}

Signal bessel_kernel_signal(double alpha, double c) {
  if (!(alpha > -1.0) || !std::isfinite(alpha)) throw DomainError("kernel signal needs alpha > -1");
  if (!(c > 0) || !std::isfinite(c)) throw DomainError("kernel signal needs c > 0");
  Signal s;
  s.kind = SignalKind::BesselKernel;
  s.label = "kernel(alpha=" + std::to_string(alpha) + ",c=" + std::to_string(c) + ")";
  s.bandwidth = c;
  s.parity = 0;
  s.eval = [alpha, c](double x) { return c * kernel_K(alpha, c * x); };
  return s;
}

std::vector<double> standard_normals(std::uint64_t seed, int count) {
  SplitMix64 rng{seed};
  std::vector<double> out;
  out.reserve(count + 1);
  while (static_cast<int>(out.size()) < count) {
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    out.push_back(r * std::cos(2 * kPi * u2));
    out.push_back(r * std::sin(2 * kPi * u2));
  }
  out.resize(std::max(count, 0));
  return out;
}

Signal sobolev_signal(double s, std::uint64_t seed, int kmax) {
  if (kmax < 1) throw DomainError("sobolev signal needs kmax >= 1");
  if (!std::isfinite(s)) throw DomainError("sobolev signal needs a finite s");
  auto amp = std::make_shared<std::vector<double>>(standard_normals(seed, kmax));
  for (int k = 1; k <= kmax; ++k) (*amp)[k - 1] *= std::pow(static_cast<double>(k), -s);
  Signal sig;
  sig.kind = SignalKind::Sobolev;
  sig.label = "sobolev(s=" + std::to_string(s) + ",seed=" + std::to_string(seed) +
              ",kmax=" + std::to_string(kmax) + ")";
  sig.bandwidth = kPi * kmax;
  sig.parity = 0;
  sig.eval = [amp](double x) {
    // cos(k theta) by the Chebyshev recurrence, one cos per point
    const double t = kPi * x;
    const double two_cos = 2 * std::cos(t);
    double prev = 1.0, cur = std::cos(t), sum = 0.0;
    for (std::size_t k = 0; k < amp->size(); ++k) {
      sum += (*amp)[k] * cur;
      const double next = two_cos * cur - prev;
      prev = cur;
      cur = next;
    }
    return sum;
  };
  return sig;
}

Signal user_samples_signal(std::vector<double> xs, std::vector<double> values) {
  if (xs.size() != values.size()) throw DomainError("sample columns differ in length");
  if (xs.size() < 2) throw DomainError("need at least two samples");
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return xs[i] < xs[j]; });
  auto px = std::make_shared<std::vector<double>>();
  auto pv = std::make_shared<std::vector<double>>();
  for (std::size_t i : order) {
    if (!(std::fabs(xs[i]) <= 1.0)) throw DomainError("sample abscissa outside [-1, 1]");
    if (!std::isfinite(values[i])) throw DomainError("non-finite sample value");
    if (!px->empty() && xs[i] == px->back()) throw DomainError("duplicate sample abscissa");
    px->push_back(xs[i]);
    pv->push_back(values[i]);
  }
  Signal s;
  s.kind = SignalKind::UserSamples;
  s.label = "samples(" + std::to_string(px->size()) + ")";
  // a kink per interval; resolve at least the sample spacing
  s.bandwidth = kPi * static_cast<double>(px->size());
  s.parity = -1;
  s.eval = [px, pv](double x) {
    const auto& X = *px;
    const auto& V = *pv;
    if (x <= X.front()) return V.front();
    if (x >= X.back()) return V.back();
    const std::size_t j = std::upper_bound(X.begin(), X.end(), x) - X.begin();
    const double t = (x - X[j - 1]) / (X[j] - X[j - 1]);
    return V[j - 1] + t * (V[j] - V[j - 1]);
  };
  return s;
}

Signal load_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open sample file " + path);
  std::vector<double> xs, vs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    double x, v;
    const bool ok = comma != std::string::npos &&
                    parse_double(std::string_view(line).substr(0, comma), x) &&
                    parse_double(std::string_view(line).substr(comma + 1), v);
    if (!ok) {
      if (xs.empty() && lineno == 1) continue;  // header
      throw DomainError(path + ":" + std::to_string(lineno) + ": expected 'x,value'");
    }
    xs.push_back(x);
    vs.push_back(v);
  }
  Signal s = user_samples_signal(std::move(xs), std::move(vs));
  s.label = "file(" + path + ")";
  return s;
}

Signal signal_from_spec(const std::string& spec, double alpha, double c) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "file") {
    if (body.empty()) throw DomainError("file: needs a path");
    return load_samples_csv(body);
  }
  auto kv = parse_options(body, spec);
  if (head == "sinc") {
    const double a = take_real(kv, "a", 0.0, true);
    reject_leftovers(kv);
    return sinc_signal(a);
  }
  if (head == "kernel") {
    reject_leftovers(kv);
    return bessel_kernel_signal(alpha, c);
  }
  if (head == "sobolev") {
    const double s = take_real(kv, "s", 1.0, false);
    const double seed = take_real(kv, "seed", 42.0, false);
    const double kmax = take_real(kv, "kmax", 1000.0, false);
    reject_leftovers(kv);
    if (seed < 0 || seed != std::floor(seed) || seed > 9.0e15)
      throw DomainError("sobolev seed must be a non-negative integer");
    if (kmax != std::floor(kmax) || kmax < 1 || kmax > 1e6)
      throw DomainError("sobolev kmax must be an integer in [1, 1e6]");
    return sobolev_signal(s, static_cast<std::uint64_t>(seed), static_cast<int>(kmax));
  }
  throw DomainError("unknown signal kind '" + head + "' (sinc, kernel, sobolev, file)");
}

}  // namespace gpswf
