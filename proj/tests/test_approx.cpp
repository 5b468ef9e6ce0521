#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "gpswf/approx.hpp"
#include "gpswf/errors.hpp"
#include "gpswf/spectrum.hpp"

using namespace gpswf;

namespace {

constexpr double kPi = std::numbers::pi;

Signal from_function(std::function<double(double)> f, double bandwidth, int parity = -1) {
  Signal s;
  s.kind = SignalKind::UserSamples;
  s.label = "test";
  s.bandwidth = bandwidth;
  s.parity = parity;
  s.eval = std::move(f);
  return s;
}

}  // namespace

TEST_CASE("sinc signal") {
  const Signal s = sinc_signal(40.0);
  CHECK(s(0.0) == 1.0);
  CHECK(std::fabs(s(kPi / 40)) < 1e-15);
  CHECK(s(0.05) == doctest::Approx(std::sin(2.0) / 2.0).epsilon(1e-15));
  CHECK(s(1e-7) == doctest::Approx(1.0 - 16e-12 / 6).epsilon(1e-15));
  CHECK(s(-0.3) == s(0.3));
  CHECK(s.parity == 0);
  CHECK(s.bandwidth == 40.0);
}

TEST_CASE("kernel signal") {
  const Signal k = bessel_kernel_signal(1.0, 50.0);
  CHECK(k(0.0) == doctest::Approx(50.0 * weight_mass(1.0)).epsilon(1e-14));
  const Signal k0 = bessel_kernel_signal(0.0, 7.0);
  for (double x : {0.1, 0.4, -0.9})
    CHECK(k0(x) == doctest::Approx(2 * std::sin(7.0 * x) / x).epsilon(1e-13));
  // inverse Fourier transform of (1-(t/c)^2)^a on [-c, c]
  const QuadratureRule r = gauss_jacobi(1.0, 200);
  double direct = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) direct += r.weights[i] * std::cos(50.0 * 0.1 * r.nodes[i]);
  CHECK(k(0.1) == doctest::Approx(50.0 * direct).epsilon(1e-12));
}

TEST_CASE("sobolev signal and its normals") {
  // SplitMix64 / Box-Muller, reference values computed independently
  const std::vector<double> z = standard_normals(42, 5);
  const double expect[] = {0.41471975043153003, 0.652681222151943, -0.8918862136277573,
                           1.3268335628141055, 1.729593087937403};
  REQUIRE(z.size() == 5u);
  for (int i = 0; i < 5; ++i) CHECK(z[i] == doctest::Approx(expect[i]).epsilon(1e-14));

  const Signal one = sobolev_signal(1.0, 42, 1);
  for (double x : {0.0, 0.3, -0.7})
    CHECK(one(x) == doctest::Approx(expect[0] * std::cos(kPi * x)).epsilon(1e-14));

  const Signal s = sobolev_signal(1.0, 7, 300);
  for (double x : {0.11, 0.5, 0.93}) CHECK(s(x) == doctest::Approx(s(-x)).epsilon(1e-13));
  const Signal again = sobolev_signal(1.0, 7, 300);
  CHECK(s(0.37) == again(0.37));
  CHECK(s(0.37) != sobolev_signal(1.0, 8, 300)(0.37));
  // direct sum
  const std::vector<double> zz = standard_normals(7, 300);
  double direct = 0.0;
  for (int k = 1; k <= 300; ++k) direct += zz[k - 1] / k * std::cos(k * kPi * 0.37);
  CHECK(s(0.37) == doctest::Approx(direct).epsilon(1e-11));
  CHECK_THROWS_AS(sobolev_signal(1.0, 1, 0), DomainError);
}

TEST_CASE("sobolev norm of Jacobi polynomials") {
  const double a = 0.5;
  const QuadratureRule r = gauss_jacobi(a, 80);
  const Signal p0 = from_function([&](double x) { return jacobi_eval(0, a, x); }, 0.0);
  const Signal p3 = from_function([&](double x) { return jacobi_eval(3, a, x); }, 0.0);
  const Signal p12 =
      from_function([&](double x) { return jacobi_eval(1, a, x) + jacobi_eval(2, a, x); }, 0.0);
  CHECK(sobolev_norm(p0, 1.0, a, 20, r).value == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(sobolev_norm(p3, 1.0, a, 20, r).value == doctest::Approx(std::sqrt(10.0)).epsilon(1e-13));
  // (1+1) + (1+4)
  CHECK(sobolev_norm(p12, 1.0, a, 20, r).value == doctest::Approx(std::sqrt(7.0)).epsilon(1e-13));
  CHECK(sobolev_norm(p3, 0.0, a, 20, r).value == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_FALSE(sobolev_norm(p3, 1.0, a, 20, r).resolution_warning);
}

TEST_CASE("projection reproduces a basis function") {
  const GpswfBasis b = compute_basis(GpswfParams{0.5, 6.0, 0}, 10);
  const Signal psi2 = from_function([&](double x) { return eval_psi(b, 2, x); }, 6.0, 0);
  const QuadratureRule r = projection_rule(b, psi2);
  const ProjectionReport p = project(b, psi2, 5, r);
  CHECK(p.err_weighted_l2 <= 1e-10);
  CHECK(p.err_sup_grid <= 1e-10);
  CHECK(p.signal_norm == doctest::Approx(1.0).epsilon(1e-12));
  for (int n = 0; n <= 5; ++n) CHECK(p.coefficients[n] == doctest::Approx(n == 2 ? 1.0 : 0.0).epsilon(1e-12));
  // not in the span
  const ProjectionReport q = project(b, psi2, 1, r);
  CHECK(q.err_weighted_l2 == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("projection Parseval and parity") {
  const double c = 20.0;
  const GpswfBasis b = compute_basis(GpswfParams{0.0, c, 0}, 40);
  const Signal f = sinc_signal(c);
  const QuadratureRule r = projection_rule(b, f);
  const ProjectionReport p = project(b, f, 39, r);
  double energy = 0.0;
  for (double a : p.coefficients) energy += a * a;
  CHECK(energy + p.err_weighted_l2 * p.err_weighted_l2 ==
        doctest::Approx(p.signal_norm * p.signal_norm).epsilon(1e-8));
  for (int n = 1; n < 40; n += 2) CHECK(std::fabs(p.coefficients[n]) < 1e-14);
  // a band-limited signal is captured once N is well past 2c/pi
  CHECK(p.err_sup_grid < 1e-8);
  REQUIRE(p.bound_rhs);
  const ProjectionReport small = project(b, f, 4, r);
  CHECK(small.err_weighted_l2 > p.err_weighted_l2);
  const std::vector<double> xs = {-0.3, 0.0, 0.8};
  const std::vector<double> rec = reconstruct(b, p.coefficients, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(rec[i] == doctest::Approx(f(xs[i])).epsilon(1e-8));
}

TEST_CASE("projection preconditions") {
  const GpswfBasis b = compute_basis(GpswfParams{0.0, 3.0, 0}, 5);
  const Signal f = sinc_signal(3.0);
  const QuadratureRule r = projection_rule(b, f);
  CHECK_THROWS_AS(project(b, f, 6, r), PreconditionError);
  CHECK_THROWS_AS(project(b, f, -1, r), PreconditionError);
  CHECK_THROWS_AS(project(b, f, 3, gauss_jacobi(0.0, 4)), PreconditionError);
  CHECK_THROWS_AS(project(b, f, 3, gauss_jacobi(0.5, r.size())), PreconditionError);
  const std::vector<double> bad = {1.5};
  CHECK_THROWS_AS(reconstruct(b, std::vector<double>{1.0}, bad), DomainError);
}

TEST_CASE("rough signal raises the resolution warning") {
  const GpswfBasis b = compute_basis(GpswfParams{0.0, 3.0, 0}, 5);
  const Signal step = from_function([](double x) { return x < 0.1 ? 0.0 : 1.0; }, 3.0);
  const ProjectionReport p = project(b, step, 4, projection_rule(b, step));
  CHECK(p.resolution_warning);
  CHECK_FALSE(p.warning.empty());
}

TEST_CASE("approximation bound shapes") {
  const double lam = 1e-6, chi = 400.0, norm = 2.0;
  const double x1 = approx_error_bound_rhs(ApproxBoundKind::Approxx1, lam, chi, 1.0, 10.0, norm);
  CHECK(x1 == doctest::Approx(std::sqrt(lam) * norm));
  CHECK(approx_error_bound_rhs(ApproxBoundKind::Approxx2, lam, chi, 1.0, 10.0, norm) ==
        doctest::Approx(x1 * chi));
  CHECK(approx_error_bound_rhs(ApproxBoundKind::Approx1, lam, chi, 1.0, 10.0, norm) ==
        doctest::Approx(x1 * chi));
  CHECK(approx_error_bound_rhs(ApproxBoundKind::Approx2, lam, chi, 1.0, 10.0, norm) ==
        doctest::Approx(x1 * std::pow(chi, 1.5)));
  // at a = 0 the B_c sup bound and the L2(R) L2 bound coincide
  CHECK(approx_error_bound_rhs(ApproxBoundKind::Approxx2, lam, chi, 0.0, 10.0, norm) ==
        approx_error_bound_rhs(ApproxBoundKind::Approx1, lam, chi, 0.0, 10.0, norm));
  // L2(R) sup over L2 is chi^{1/2}
  CHECK(approx_error_bound_rhs(ApproxBoundKind::Approx1, lam, chi, 0.5, 10.0, norm) /
            approx_error_bound_rhs(ApproxBoundKind::Approx2, lam, chi, 0.5, 10.0, norm) ==
        doctest::Approx(1 / std::sqrt(chi)));
  CHECK_THROWS_AS(approx_error_bound_rhs(ApproxBoundKind::Approx1, 1.5, chi, 0.5, 10.0, norm),
                  DomainError);
  CHECK_THROWS_AS(approx_error_bound_rhs(ApproxBoundKind::Approx1, lam, 0.0, 0.5, 10.0, norm),
                  DomainError);
  CHECK_THROWS_AS(approx_error_bound_rhs(ApproxBoundKind::Approx1, lam, chi, 0.5, 0.0, norm),
                  DomainError);
}

TEST_CASE("deflection") {
  const std::vector<double> l = {0.9, 0.5, 0.1};
  const Deflection d = deflection(l, 2, 0.2);
  CHECK(d.which_case == 2);
  CHECK(d.value == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(d.bound == doctest::Approx(0.2 / 0.9).epsilon(1e-15));
  CHECK(d.within_bound);

  const Deflection one = deflection(l, 1, 0.6);
  CHECK(one.which_case == 1);
  CHECK(one.value == 1.0);

  const std::vector<double> low = {0.5, 0.3, 0.1};
  const Deflection cl = deflection(low, 2, 0.2);
  CHECK(cl.clamped);
  CHECK(cl.value == 0.0);

  const GpswfBasis b = compute_basis(GpswfParams{0.0, 10.0, 0}, 24);
  std::vector<double> lam;
  for (const auto& t : compute_spectrum(b)) lam.push_back(t.lambda);
  for (double e2 : {0.01, 0.1, 0.3}) {
    double prev = 2.0;
    for (int N = 1; N <= 20; ++N) {
      const Deflection x = deflection(lam, N, e2);
      CHECK(x.value <= prev);
      CHECK(x.within_bound);
      prev = x.value;
    }
  }

  CHECK_THROWS_AS(deflection(l, 3, 0.2), DomainError);
  CHECK_THROWS_AS(deflection(l, 1, 0.0), DomainError);
  CHECK_THROWS_AS(deflection(l, 1, 1.0), DomainError);
  const std::vector<double> up = {0.1, 0.9};
  CHECK_THROWS_AS(deflection(up, 1, 0.2), DomainError);
  const std::vector<double> flat = {0.5, 0.5};
  CHECK_THROWS_AS(deflection(flat, 1, 0.2), DomainError);
  CHECK(deflection(flat, 1, 0.6).value == 1.0);
}

TEST_CASE("samples file and signal specs") {
  const auto path = std::filesystem::temp_directory_path() / "gpswf_samples_test.csv";
  {
    std::ofstream o(path);
    o << "x,value\n-1,0\n0,2\n1,4\n";
  }
  const Signal s = load_samples_csv(path.string());
  CHECK(s(0.5) == doctest::Approx(3.0));
  CHECK(s(-1.0) == 0.0);
  const Signal viaspec = signal_from_spec("file:" + path.string(), 0.0, 1.0);
  CHECK(viaspec(-0.25) == doctest::Approx(1.5));
  {
    std::ofstream o(path);
    o << "0,1\nbad line\n";
  }
  CHECK_THROWS_AS(load_samples_csv(path.string()), DomainError);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(user_samples_signal({0.0, 0.0}, {1.0, 2.0}), DomainError);
  CHECK_THROWS_AS(user_samples_signal({0.0, 2.0}, {1.0, 2.0}), DomainError);

  CHECK(signal_from_spec("sinc:a=40", 0.0, 1.0)(0.05) == doctest::Approx(std::sin(2.0) / 2));
  CHECK(signal_from_spec("kernel", 1.0, 50.0)(0.0) == doctest::Approx(50.0 * weight_mass(1.0)));
  const Signal d = signal_from_spec("sobolev", 0.0, 1.0);
  CHECK(d(0.2) == sobolev_signal(1.0, 42, 1000)(0.2));
  CHECK(signal_from_spec("sobolev:s=2,seed=3,kmax=10", 0.0, 1.0)(0.2) ==
        sobolev_signal(2.0, 3, 10)(0.2));
  for (const char* bad : {"sinc", "sinc:a=x", "sinc:b=2", "gauss", "sobolev:kmax=0",
                          "sobolev:seed=-1", "file:", "file:/nonexistent/x.csv"})
    CHECK_THROWS_AS(signal_from_spec(bad, 0.0, 1.0), DomainError);
}
