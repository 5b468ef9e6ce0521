// Nystrom discretisation of Q_c in MPFR arithmetic. Tiny eigenvalues of the
// kernel matrix (1e-40 and below) sit far under double rounding noise of its
// largest entries, so the whole pipeline runs at a working precision that is
// raised until the smallest requested eigenvalue clears the noise floor.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "gpswf/eigtri.hpp"
#include "gpswf/errors.hpp"
#include "gpswf/spectrum.hpp"

namespace gpswf {

namespace {

constexpr mpfr_rnd_t R = MPFR_RNDN;

class Mp {
 public:
  explicit Mp(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Mp(const Mp& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, R);
  }
  Mp& operator=(const Mp& o) {
    if (this != &o) {
      if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, R);
    }
    return *this;
  }
  ~Mp() { mpfr_clear(v_); }
  mpfr_ptr p() { return v_; }
  mpfr_srcptr p() const { return v_; }
  double d() const { return mpfr_get_d(v_, R); }

 private:
  mpfr_t v_;
};

using MpVec = std::vector<Mp>;

struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform() { return ((next() >> 11) + 0.5) * 0x1.0p-53; }
};

// Symmetric Gauss-Jacobi nodes y_i > 0 (descending) and weights, refined by
// Newton on the orthonormal recurrence; weights are Christoffel numbers.
struct MpRule {
  MpVec y, w;
  bool has_centre = false;
  Mp w_centre;
  explicit MpRule(mpfr_prec_t prec) : w_centre(prec) {}
};

MpRule mp_gauss_jacobi(double alpha, int m, mpfr_prec_t prec) {
  const QuadratureRule seed = gauss_jacobi(alpha, static_cast<std::size_t>(m));
  MpRule rule(prec);
  const int h = m / 2;
  rule.has_centre = (m % 2 == 1);

  Mp al(prec), t(prec), u(prec);
  mpfr_set_d(al.p(), alpha, R);
  MpVec a(m + 1, Mp(prec));
  for (int k = 1; k <= m; ++k) {
    // b_k = k(k+2a) / ((2k+2a-1)(2k+2a+1)), b_1 = 1/(2a+3)
    if (k == 1) {
      mpfr_mul_ui(t.p(), al.p(), 2, R);
      mpfr_add_ui(t.p(), t.p(), 3, R);
      mpfr_ui_div(t.p(), 1, t.p(), R);
    } else {
      mpfr_mul_ui(t.p(), al.p(), 2, R);
      mpfr_add_ui(t.p(), t.p(), k, R);
      mpfr_mul_ui(t.p(), t.p(), k, R);
      mpfr_mul_ui(u.p(), al.p(), 2, R);
      mpfr_add_ui(u.p(), u.p(), 2 * k, R);
      Mp v(prec);
      mpfr_sub_ui(v.p(), u.p(), 1, R);
      mpfr_add_ui(u.p(), u.p(), 1, R);
      mpfr_mul(u.p(), u.p(), v.p(), R);
      mpfr_div(t.p(), t.p(), u.p(), R);
    }
    mpfr_sqrt(a[k].p(), t.p(), R);
  }
  // p_0 = 1/sqrt(mass), mass = sqrt(pi) Gamma(a+1) / Gamma(a+3/2)
  Mp p0(prec);
  mpfr_const_pi(t.p(), R);
  mpfr_sqrt(t.p(), t.p(), R);
  mpfr_add_ui(u.p(), al.p(), 1, R);
  mpfr_gamma(u.p(), u.p(), R);
  mpfr_mul(t.p(), t.p(), u.p(), R);
  mpfr_set_d(u.p(), alpha + 1.5, R);
  mpfr_gamma(u.p(), u.p(), R);
  mpfr_div(t.p(), t.p(), u.p(), R);
  mpfr_rec_sqrt(p0.p(), t.p(), R);

  Mp x(prec), prev(prec), cur(prec), next(prec), dprev(prec), dcur(prec), dnext(prec),
      chr(prec), delta(prec);
  auto evaluate = [&](bool with_weight) {
    mpfr_set_zero(prev.p(), 1);
    mpfr_set(cur.p(), p0.p(), R);
    mpfr_set_zero(dprev.p(), 1);
    mpfr_set_zero(dcur.p(), 1);
    if (with_weight) mpfr_sqr(chr.p(), cur.p(), R);
    for (int k = 0; k < m; ++k) {
      // next = (x cur - a_k prev) / a_{k+1}; dnext = (cur + x dcur - a_k dprev) / a_{k+1}
      mpfr_mul(next.p(), x.p(), cur.p(), R);
      mpfr_mul(t.p(), a[k].p(), prev.p(), R);
      mpfr_sub(next.p(), next.p(), t.p(), R);
      mpfr_div(next.p(), next.p(), a[k + 1].p(), R);
      mpfr_mul(dnext.p(), x.p(), dcur.p(), R);
      mpfr_add(dnext.p(), dnext.p(), cur.p(), R);
      mpfr_mul(t.p(), a[k].p(), dprev.p(), R);
      mpfr_sub(dnext.p(), dnext.p(), t.p(), R);
      mpfr_div(dnext.p(), dnext.p(), a[k + 1].p(), R);
      mpfr_swap(prev.p(), cur.p());
      mpfr_swap(cur.p(), next.p());
      mpfr_swap(dprev.p(), dcur.p());
      mpfr_swap(dcur.p(), dnext.p());
      if (with_weight && k + 1 < m) {
        mpfr_sqr(t.p(), cur.p(), R);
        mpfr_add(chr.p(), chr.p(), t.p(), R);
      }
    }
  };

  for (int i = 0; i < h; ++i) {
    mpfr_set_d(x.p(), seed.nodes[m - 1 - i], R);
    for (int it = 0; it < 40; ++it) {
      evaluate(false);
      mpfr_div(delta.p(), cur.p(), dcur.p(), R);
      mpfr_sub(x.p(), x.p(), delta.p(), R);
      if (mpfr_zero_p(delta.p()) ||
          mpfr_get_exp(delta.p()) < mpfr_get_exp(x.p()) - static_cast<mpfr_exp_t>(prec) + 4)
        break;
    }
    evaluate(true);
    rule.y.push_back(x);
    Mp wi(prec);
    mpfr_ui_div(wi.p(), 1, chr.p(), R);
    rule.w.push_back(wi);
  }
  if (rule.has_centre) {
    mpfr_set_zero(x.p(), 1);
    evaluate(true);
    mpfr_ui_div(rule.w_centre.p(), 1, chr.p(), R);
  }
  return rule;
}

// K_a(z) = mass * sum_k (-z^2/4)^k / (k! (a+3/2)_k); alternating, so the
// caller supplies enough guard bits for |z| up to 2c.
class KernelSeries {
 public:
  KernelSeries(double alpha, mpfr_prec_t prec) : prec_(prec), al_(prec), mass_(prec), q_(prec),
      term_(prec), sum_(prec), t_(prec) {
    mpfr_set_d(al_.p(), alpha + 0.5, R);
    Mp g(prec);
    mpfr_const_pi(mass_.p(), R);
    mpfr_sqrt(mass_.p(), mass_.p(), R);
    mpfr_set_d(g.p(), alpha + 1.0, R);
    mpfr_gamma(g.p(), g.p(), R);
    mpfr_mul(mass_.p(), mass_.p(), g.p(), R);
    mpfr_set_d(g.p(), alpha + 1.5, R);
    mpfr_gamma(g.p(), g.p(), R);
    mpfr_div(mass_.p(), mass_.p(), g.p(), R);
  }

  void eval(mpfr_ptr out, mpfr_srcptr z) {
    mpfr_sqr(q_.p(), z, R);
    mpfr_div_si(q_.p(), q_.p(), -4, R);
    mpfr_set_ui(term_.p(), 1, R);
    mpfr_set_ui(sum_.p(), 1, R);
    const mpfr_exp_t floor_exp = -static_cast<mpfr_exp_t>(prec_) - 8;
    for (unsigned long k = 1; k < 100000; ++k) {
      mpfr_mul(term_.p(), term_.p(), q_.p(), R);
      mpfr_add_ui(t_.p(), al_.p(), k, R);
      mpfr_mul_ui(t_.p(), t_.p(), k, R);
      mpfr_div(term_.p(), term_.p(), t_.p(), R);
      mpfr_add(sum_.p(), sum_.p(), term_.p(), R);
      if (mpfr_zero_p(term_.p())) break;
      if (mpfr_cmpabs(t_.p(), q_.p()) > 0 && mpfr_get_exp(term_.p()) < floor_exp)
        break;
    }
    mpfr_mul(out, sum_.p(), mass_.p(), R);
  }
  mpfr_srcptr mass() const { return mass_.p(); }

 private:
  mpfr_prec_t prec_;
  Mp al_, mass_, q_, term_, sum_, t_;
};

// Dense symmetric matrix, row-major.
struct MpMatrix {
  int n = 0;
  MpVec a;
  MpMatrix(int n_, mpfr_prec_t prec) : n(n_), a(static_cast<std::size_t>(n_) * n_, Mp(prec)) {}
  Mp& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  const Mp& at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

// Cyclic Jacobi on a small symmetric matrix; eigenvalues on the diagonal,
// eigenvectors in the columns of v.
void jacobi_eigen(MpMatrix& h, MpMatrix& v, mpfr_prec_t prec) {
  const int n = h.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mpfr_set_ui(v.at(i, j).p(), i == j ? 1 : 0, R);
  Mp off(prec), tot(prec), theta(prec), t(prec), c(prec), s(prec), tmp(prec), x(prec), y(prec);
  for (int sweep = 0; sweep < 100; ++sweep) {
    mpfr_set_zero(off.p(), 1);
    mpfr_set_zero(tot.p(), 1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        mpfr_sqr(tmp.p(), h.at(i, j).p(), R);
        mpfr_add(tot.p(), tot.p(), tmp.p(), R);
        if (i != j) mpfr_add(off.p(), off.p(), tmp.p(), R);
      }
    if (mpfr_zero_p(off.p()) ||
        mpfr_get_exp(off.p()) < mpfr_get_exp(tot.p()) - 2 * static_cast<mpfr_exp_t>(prec) + 24)
      return;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (mpfr_zero_p(h.at(p, q).p())) continue;
        // theta = (h_qq - h_pp) / (2 h_pq); t = sign(theta) / (|theta| + sqrt(theta^2+1))
        mpfr_sub(theta.p(), h.at(q, q).p(), h.at(p, p).p(), R);
        mpfr_div(theta.p(), theta.p(), h.at(p, q).p(), R);
        mpfr_div_ui(theta.p(), theta.p(), 2, R);
        mpfr_sqr(tmp.p(), theta.p(), R);
        mpfr_add_ui(tmp.p(), tmp.p(), 1, R);
        mpfr_sqrt(tmp.p(), tmp.p(), R);
        mpfr_abs(t.p(), theta.p(), R);
        mpfr_add(tmp.p(), tmp.p(), t.p(), R);
        mpfr_ui_div(t.p(), 1, tmp.p(), R);
        if (mpfr_sgn(theta.p()) < 0) mpfr_neg(t.p(), t.p(), R);
        mpfr_sqr(tmp.p(), t.p(), R);
        mpfr_add_ui(tmp.p(), tmp.p(), 1, R);
        mpfr_rec_sqrt(c.p(), tmp.p(), R);
        mpfr_mul(s.p(), t.p(), c.p(), R);
        for (int k = 0; k < n; ++k) {
          // columns p, q of h
          mpfr_set(x.p(), h.at(k, p).p(), R);
          mpfr_set(y.p(), h.at(k, q).p(), R);
          mpfr_mul(tmp.p(), s.p(), y.p(), R);
          mpfr_mul(h.at(k, p).p(), c.p(), x.p(), R);
          mpfr_sub(h.at(k, p).p(), h.at(k, p).p(), tmp.p(), R);
          mpfr_mul(tmp.p(), s.p(), x.p(), R);
          mpfr_mul(h.at(k, q).p(), c.p(), y.p(), R);
          mpfr_add(h.at(k, q).p(), h.at(k, q).p(), tmp.p(), R);
        }
        for (int k = 0; k < n; ++k) {
          // rows p, q of h
          mpfr_set(x.p(), h.at(p, k).p(), R);
          mpfr_set(y.p(), h.at(q, k).p(), R);
          mpfr_mul(tmp.p(), s.p(), y.p(), R);
          mpfr_mul(h.at(p, k).p(), c.p(), x.p(), R);
          mpfr_sub(h.at(p, k).p(), h.at(p, k).p(), tmp.p(), R);
          mpfr_mul(tmp.p(), s.p(), x.p(), R);
          mpfr_mul(h.at(q, k).p(), c.p(), y.p(), R);
          mpfr_add(h.at(q, k).p(), h.at(q, k).p(), tmp.p(), R);
        }
        for (int k = 0; k < n; ++k) {
          mpfr_set(x.p(), v.at(k, p).p(), R);
          mpfr_set(y.p(), v.at(k, q).p(), R);
          mpfr_mul(tmp.p(), s.p(), y.p(), R);
          mpfr_mul(v.at(k, p).p(), c.p(), x.p(), R);
          mpfr_sub(v.at(k, p).p(), v.at(k, p).p(), tmp.p(), R);
          mpfr_mul(tmp.p(), s.p(), x.p(), R);
          mpfr_mul(v.at(k, q).p(), c.p(), y.p(), R);
          mpfr_add(v.at(k, q).p(), v.at(k, q).p(), tmp.p(), R);
        }
      }
  }
  throw NumericalError("multiprecision Jacobi eigen-solver did not converge");
}

// Orthonormalise the columns of w (n x b, row-major) in place, two passes of
// modified Gram-Schmidt.
void orthonormalise(MpVec& w, int n, int b, mpfr_prec_t prec) {
  Mp dot(prec), tmp(prec), nrm(prec);
  for (int j = 0; j < b; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < j; ++i) {
        mpfr_set_zero(dot.p(), 1);
        for (int r = 0; r < n; ++r) {
          mpfr_mul(tmp.p(), w[r * b + i].p(), w[r * b + j].p(), R);
          mpfr_add(dot.p(), dot.p(), tmp.p(), R);
        }
        for (int r = 0; r < n; ++r) {
          mpfr_mul(tmp.p(), dot.p(), w[r * b + i].p(), R);
          mpfr_sub(w[r * b + j].p(), w[r * b + j].p(), tmp.p(), R);
        }
      }
    }
    mpfr_set_zero(nrm.p(), 1);
    for (int r = 0; r < n; ++r) {
      mpfr_sqr(tmp.p(), w[r * b + j].p(), R);
      mpfr_add(nrm.p(), nrm.p(), tmp.p(), R);
    }
    mpfr_sqrt(nrm.p(), nrm.p(), R);
    if (mpfr_zero_p(nrm.p())) throw NumericalError("subspace iteration lost rank");
    for (int r = 0; r < n; ++r) mpfr_div(w[r * b + j].p(), w[r * b + j].p(), nrm.p(), R);
  }
}

// Largest `want` eigenvalues of a symmetric block by subspace iteration with
// Rayleigh-Ritz, descending.
std::vector<Mp> top_eigenvalues(const MpMatrix& a, int want, mpfr_prec_t prec, std::uint64_t seed) {
  const int n = a.n;
  want = std::min(want, n);
  const int b = std::min(n, want + 8);
  MpVec v(static_cast<std::size_t>(n) * b, Mp(prec)), w(v);
  SplitMix64 rng{seed};
  for (auto& e : v) mpfr_set_d(e.p(), rng.uniform() - 0.5, R);
  orthonormalise(v, n, b, prec);

  Mp tmp(prec), acc(prec);
  std::vector<Mp> theta(b, Mp(prec)), last(b, Mp(prec));
  MpMatrix h(b, prec), y(b, prec);
  for (int iter = 0; iter < 200; ++iter) {
    // w = A v
    for (int r = 0; r < n; ++r)
      for (int j = 0; j < b; ++j) {
        mpfr_set_zero(acc.p(), 1);
        for (int k = 0; k < n; ++k) {
          mpfr_mul(tmp.p(), a.at(r, k).p(), v[k * b + j].p(), R);
          mpfr_add(acc.p(), acc.p(), tmp.p(), R);
        }
        mpfr_set(w[r * b + j].p(), acc.p(), R);
      }
    // h = v^T w
    for (int i = 0; i < b; ++i)
      for (int j = i; j < b; ++j) {
        mpfr_set_zero(acc.p(), 1);
        for (int r = 0; r < n; ++r) {
          mpfr_mul(tmp.p(), v[r * b + i].p(), w[r * b + j].p(), R);
          mpfr_add(acc.p(), acc.p(), tmp.p(), R);
        }
        mpfr_set(h.at(i, j).p(), acc.p(), R);
        mpfr_set(h.at(j, i).p(), acc.p(), R);
      }
    jacobi_eigen(h, y, prec);
    std::vector<int> order(b);
    for (int i = 0; i < b; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return mpfr_greater_p(h.at(i, i).p(), h.at(j, j).p()) != 0; });
    for (int i = 0; i < b; ++i) theta[i] = h.at(order[i], order[i]);

    // settled when each wanted Ritz value moved by < 2^-60 relative, or by
    // less than the rounding floor (those are caught by precision escalation)
    bool converged = iter > 0;
    const mpfr_exp_t noise_exp = mpfr_get_exp(theta[0].p()) - static_cast<mpfr_exp_t>(prec) + 16;
    for (int i = 0; i < want && converged; ++i) {
      mpfr_sub(tmp.p(), theta[i].p(), last[i].p(), R);
      if (mpfr_zero_p(tmp.p())) continue;
      const mpfr_exp_t e = mpfr_get_exp(tmp.p());
      if (e > noise_exp && (mpfr_zero_p(theta[i].p()) || e > mpfr_get_exp(theta[i].p()) - 60))
        converged = false;
    }
    for (int i = 0; i < b; ++i) last[i] = theta[i];
    if (converged) return std::vector<Mp>(theta.begin(), theta.begin() + want);

    // v = orth(w y), Ritz directions in descending order
    for (int r = 0; r < n; ++r)
      for (int j = 0; j < b; ++j) {
        mpfr_set_zero(acc.p(), 1);
        for (int k = 0; k < b; ++k) {
          mpfr_mul(tmp.p(), w[r * b + k].p(), y.at(k, order[j]).p(), R);
          mpfr_add(acc.p(), acc.p(), tmp.p(), R);
        }
        mpfr_set(v[r * b + j].p(), acc.p(), R);
      }
    orthonormalise(v, n, b, prec);
  }
  throw NumericalError("Nystrom subspace iteration did not converge");
}

std::vector<double> nystrom_at(const GpswfParams& params, int m, int count, mpfr_prec_t prec,
                               double& noise_ratio) {
  const double c = params.c;
  const mpfr_prec_t guard = static_cast<mpfr_prec_t>(std::ceil(2.0 * c * 1.4426950408889634)) + 32;
  const mpfr_prec_t work = prec + guard;
  const MpRule rule = mp_gauss_jacobi(params.alpha, m, work);
  const int h = m / 2;
  KernelSeries kernel(params.alpha, work);

  Mp scale(work), z(work), kd(work), ks(work), cc(work), sw(work), tmp(work);
  mpfr_set_d(cc.p(), c, R);
  mpfr_const_pi(scale.p(), R);
  mpfr_mul_ui(scale.p(), scale.p(), 2, R);
  mpfr_div(scale.p(), cc.p(), scale.p(), R);  // c / (2 pi)

  MpVec sqw(h, Mp(work));
  for (int i = 0; i < h; ++i) mpfr_sqrt(sqw[i].p(), rule.w[i].p(), R);

  const int ne = h + (rule.has_centre ? 1 : 0);
  MpMatrix even(ne, prec), odd(h, prec);
  for (int i = 0; i < h; ++i)
    for (int j = i; j < h; ++j) {
      mpfr_sub(z.p(), rule.y[i].p(), rule.y[j].p(), R);
      mpfr_mul(z.p(), z.p(), cc.p(), R);
      kernel.eval(kd.p(), z.p());
      mpfr_add(z.p(), rule.y[i].p(), rule.y[j].p(), R);
      mpfr_mul(z.p(), z.p(), cc.p(), R);
      kernel.eval(ks.p(), z.p());
      mpfr_mul(sw.p(), sqw[i].p(), sqw[j].p(), R);
      mpfr_mul(sw.p(), sw.p(), scale.p(), R);
      mpfr_add(tmp.p(), kd.p(), ks.p(), R);
      mpfr_mul(even.at(i, j).p(), tmp.p(), sw.p(), R);
      mpfr_set(even.at(j, i).p(), even.at(i, j).p(), R);
      mpfr_sub(tmp.p(), kd.p(), ks.p(), R);
      mpfr_mul(odd.at(i, j).p(), tmp.p(), sw.p(), R);
      mpfr_set(odd.at(j, i).p(), odd.at(i, j).p(), R);
    }
  if (rule.has_centre) {
    Mp sqc(work);
    mpfr_sqrt(sqc.p(), rule.w_centre.p(), R);
    for (int i = 0; i < h; ++i) {
      mpfr_mul(z.p(), rule.y[i].p(), cc.p(), R);
      kernel.eval(kd.p(), z.p());
      mpfr_mul(sw.p(), sqw[i].p(), sqc.p(), R);
      mpfr_mul(sw.p(), sw.p(), scale.p(), R);
      mpfr_sqrt_ui(tmp.p(), 2, R);
      mpfr_mul(sw.p(), sw.p(), tmp.p(), R);
      mpfr_mul(even.at(i, h).p(), kd.p(), sw.p(), R);
      mpfr_set(even.at(h, i).p(), even.at(i, h).p(), R);
    }
    mpfr_mul(tmp.p(), kernel.mass(), rule.w_centre.p(), R);
    mpfr_mul(even.at(h, h).p(), tmp.p(), scale.p(), R);
  }

  // the even and odd spectra interlace, so count/2 + 2 from each is enough
  const int want = count / 2 + 2;
  std::vector<Mp> ev = top_eigenvalues(even, want, prec, 0x5EEDull);
  std::vector<Mp> od = h > 0 ? top_eigenvalues(odd, want, prec, 0x0DDull) : std::vector<Mp>{};
  std::vector<double> all;
  for (const auto& e : ev) all.push_back(e.d());
  for (const auto& e : od) all.push_back(e.d());
  std::sort(all.begin(), all.end(), std::greater<double>());
  if (static_cast<int>(all.size()) < count) throw NumericalError("Nystrom produced too few eigenvalues");
  all.resize(count);

  // rounding noise of the discretised operator relative to its size
  const double floor = std::ldexp(all.front() * m * 16.0, -static_cast<int>(prec));
  noise_ratio = all.back() / floor;
  return all;
}

}  // namespace

std::vector<double> nystrom_lambda(const GpswfParams& params, int m, int count) {
  if (!(params.alpha > -1.0) || !std::isfinite(params.alpha)) throw DomainError("alpha must be > -1");
  if (!(params.c >= 0.0) || !std::isfinite(params.c)) throw DomainError("c must be >= 0");
  if (count < 1) throw PreconditionError("count must be >= 1");
  if (m < 4 * count + 50)
    throw PreconditionError("Nystrom needs m >= 4*count + 50 nodes (m=" + std::to_string(m) + ")");
  if (params.c == 0.0) return std::vector<double>(count, 0.0);

  mpfr_prec_t prec = 128;
  for (int attempt = 0; attempt < 8; ++attempt) {
    double ratio = 0.0;
    std::vector<double> out = nystrom_at(params, m, count, prec, ratio);
    if (ratio >= 1e9) return out;
    const double need = (ratio > 0) ? std::log2(1e9 / ratio) : 64.0;
    prec += static_cast<mpfr_prec_t>(std::ceil(std::min(need, 4096.0))) + 64;
    if (prec > 8192) break;
  }
  throw NumericalError("Nystrom precision escalation exhausted");
}

double nystrom_trace(const GpswfParams& params, int m) {
  if (m < 1) throw PreconditionError("m must be >= 1");
  const QuadratureRule rule = gauss_jacobi(params.alpha, static_cast<std::size_t>(m));
  double s = 0.0;
  for (double w : rule.weights) s += w;
  return params.c / (2 * std::numbers::pi) * kernel_K(params.alpha, 0.0) * s;
}

}  // namespace gpswf
