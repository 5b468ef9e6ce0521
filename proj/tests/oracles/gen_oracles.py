# Regenerates tests/oracle_data.hpp from mpmath at high precision.
# python3 tests/oracles/gen_oracles.py > tests/oracle_data.hpp
import mpmath as mp

mp.mp.dps = 90


def h(k, a):
    return 2 ** (2 * a + 1) * mp.gamma(k + a + 1) ** 2 / (
        mp.factorial(k) * (2 * k + 2 * a + 1) * mp.gamma(k + 2 * a + 1))


def pnorm(k, a, x):
    if k == 0:
        return 1 / mp.sqrt(mp.sqrt(mp.pi) * mp.gamma(a + 1) / mp.gamma(a + 1.5))
    # explicit finite sum; mpmath's hypergeometric route stalls at exact zeros
    P = mp.fsum(mp.binomial(k + a, k - s) * mp.binomial(k + a, s) * ((x - 1) / 2) ** s *
                ((x + 1) / 2) ** (k - s) for s in range(k + 1))
    return P / mp.sqrt(h(k, a))


def pnorm_all(K, a, x):
    # textbook recurrence for P_k^{(a,a)}, then normalised
    P = [mp.mpf(1), (a + 1) * x]
    for n in range(2, K):
        P.append(((2 * n + 2 * a - 1) * (2 * n + 2 * a) * (2 * n + 2 * a - 2) * x * P[n - 1]
                  - 2 * (n + a - 1) ** 2 * (2 * n + 2 * a) * P[n - 2])
                 / (2 * n * (n + 2 * a) * (2 * n + 2 * a - 2)))
    return [P[0] * pnorm(0, a, x)] + [P[k] / HS[(k, a)] for k in range(1, K)]


HS = {}


def b(k, a):
    if k <= 0:
        return mp.mpf(0)
    if k == 1:
        return 1 / (2 * a + 3)  # general form is 0/0 at a = -1/2
    return mp.mpf(k) * (k + 2 * a) / ((2 * k + 2 * a - 1) * (2 * k + 2 * a + 1))


def eig(a, c, count, K):
    # full (non-split) symmetric pentadiagonal matrix of the differential operator
    a = mp.mpf(a)
    c = mp.mpf(c)
    M = mp.zeros(K, K)
    for k in range(K):
        M[k, k] = k * (k + 2 * a + 1) + c * c * (b(k, a) + b(k + 1, a))
        if k + 2 < K:
            M[k, k + 2] = M[k + 2, k] = c * c * mp.sqrt(b(k + 1, a) * b(k + 2, a))
    E, Q = mp.eigsy(M)
    order = sorted(range(K), key=lambda i: E[i])[:count]
    out = []
    for n, i in enumerate(order):
        beta = [Q[k, i] for k in range(K)]
        for k in range(1, K):
            HS[(k, a)] = mp.sqrt(h(k, a))
        psi1 = mp.fsum(bk * pk for bk, pk in zip(beta, pnorm_all(K, a, mp.mpf(1))))
        if psi1 < 0:
            beta = [-v for v in beta]
        out.append((E[i], beta))
    return out


def lam(a, c, beta, n):
    a = mp.mpf(a)
    c = mp.mpf(c)
    K = len(beta)
    for k in range(1, K):
        HS[(k, a)] = mp.sqrt(h(k, a))
    poly = lambda t: mp.fsum(bk * pk for bk, pk in zip(beta, pnorm_all(K, a, t)))
    psi1 = poly(mp.mpf(1))
    f = (lambda t: poly(t) * (1 - t * t) ** a * mp.cos(c * t)) if n % 2 == 0 else (
        lambda t: poly(t) * (1 - t * t) ** a * mp.sin(c * t))
    mu = mp.quad(f, [-1, 0, 1]) / psi1
    return c / (2 * mp.pi) * mu * mu


def fmt(v):
    return mp.nstr(v, 20, min_fixed=-5, max_fixed=5, strip_zeros=False)


print("#pragma once")
print("// generated by tests/oracles/gen_oracles.py (mpmath, 90 digits)")
print()
print("struct Oracle1 { double x; double value; };")
print("struct Oracle2 { double a; double b; double value; };")
print("struct Oracle3 { int k; double alpha; double x; double value; };")
print("struct SpectrumOracle { double alpha; double c; int n; double chi; double lambda; };")
print()

print("inline const Oracle1 kLnGamma[] = {")
for x in ["0.5", "1e-3", "1", "2.5", "7.25", "30", "171.5", "1000"]:
    print(f"  {{{x}, {fmt(mp.loggamma(mp.mpf(x)))}}},")
print("};")

print("inline const Oracle2 kBeta[] = {")
for a, bb in [("0.5", "0.5"), ("2", "3"), ("1.5", "2.25"), ("10", "0.1"), ("40", "41")]:
    print(f"  {{{a}, {bb}, {fmt(mp.beta(mp.mpf(a), mp.mpf(bb)))}}},")
print("};")

print("// J_nu(x): {nu, x, value}")
print("inline const Oracle2 kBesselJ[] = {")
for nu, x in [("0", "1"), ("0.5", "2"), ("1.5", "1"), ("2.5", "10"), ("3.5", "0.01"),
              ("10.5", "3"), ("20.5", "25"), ("0.25", "40"), ("45.5", "50"), ("100.5", "60"),
              ("150.5", "100"), ("1.75", "250"), ("300", "290"), ("60.5", "60.5"), ("0.5", "17.5"),
              ("5.5", "123.4"), ("400", "100")]:
    print(f"  {{{nu}, {x}, {fmt(mp.besselj(mp.mpf(nu), mp.mpf(x)))}}},")
print("};")

print("inline const Oracle3 kJacobiP[] = {")
for k, a, x in [(0, "0", "0.3"), (1, "0", "0.3"), (5, "0", "-0.7"), (10, "0.5", "0.25"),
                (20, "1", "0.9"), (40, "-0.5", "0.1"), (7, "-0.75", "1"), (60, "2.5", "-0.55"),
                (3, "0.25", "0")]:
    print(f"  {{{k}, {a}, {x}, {fmt(pnorm(k, mp.mpf(a), mp.mpf(x)))}}},")
print("};")

print("inline const Oracle3 kJacobiDerivative[] = {")
for k, a, x in [(1, "0", "0.3"), (5, "0", "-0.7"), (10, "0.5", "0.25"), (20, "1", "0.9"),
                (13, "-0.5", "0.6"), (7, "-0.75", "1")]:
    v = mp.diff(lambda t: pnorm(k, mp.mpf(a), t), mp.mpf(x))
    print(f"  {{{k}, {a}, {x}, {fmt(v)}}},")
print("};")

print("// K_a(x): {alpha, x, value}")
print("inline const Oracle2 kKernel[] = {")
for a, x in [("0", "1"), ("0", "0"), ("1", "0.5"), ("1", "1e-4"), ("0.5", "30"), ("-0.5", "2"),
             ("-0.75", "3.3"), ("2.25", "150"), ("1", "50")]:
    A, X = mp.mpf(a), mp.mpf(x)
    if X == 0:
        v = mp.sqrt(mp.pi) * mp.gamma(A + 1) / mp.gamma(A + 1.5)
    else:
        v = mp.sqrt(mp.pi) * 2 ** (A + 0.5) * mp.gamma(A + 1) * mp.besselj(A + 0.5, X) / X ** (A + 0.5)
    print(f"  {{{a}, {x}, {fmt(v)}}},")
print("};")

print("inline const SpectrumOracle kSpectrum[] = {")
for a, c, count, K in [("0", "1", 16, 60), ("0", "5", 16, 64), ("0.5", "5", 16, 64),
                       ("1", "10", 16, 70), ("-0.5", "2", 12, 56), ("1", "50", 6, 120)]:
    pairs = eig(mp.mpf(a), mp.mpf(c), count, K)
    for n, (chi, beta) in enumerate(pairs):
        print(f"  {{{a}, {c}, {n}, {fmt(chi)}, {fmt(lam(a, c, beta, n))}}},")
print("};")
