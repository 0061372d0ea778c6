"""Arbitrary-precision reference values for the frozen constants in the
Rust test suite. Run with `python3 oracle.py`; needs mpmath (and scipy only
for starting guesses)."""
from mpmath import mp, mpf, log, exp, sqrt, gamma, e, findroot, gammainc, harmonic, matrix, betainc
import scipy.stats as st

mp.dps = 40


def chi2_upper(a, q):
    a = mpf(a)
    f = lambda x: gammainc(mpf(q) / 2, 0, x / 2, regularized=True) - (1 - a)
    return findroot(f, mpf(float(st.chi2.isf(float(a), q))))


def pbic_c(v):
    v = mpf(v)
    return log(2) if v == 0 else -2 * log((1 - exp(-v)) / (sqrt(2) * v))


def bf_bic(a, q, n, c, xi):
    a, q, n, c, xi = map(mpf, (a, q, n, c, xi))
    x = chi2_upper(a, int(q))
    return -a**xi * log(a) * gamma(q / 2)**xi * n**(xi * q / 2) * (2 / (x + q * log(n) + c))**(xi * q / 2 - (xi - 1))


def bf_linear(a, q, n, j, b, c):
    a, q, n, j, b, c = map(mpf, (a, q, n, j, b, c))
    g = chi2_upper(a, int(q))
    ratio = 1 if n == 1 else (n - j) / (n - 1)
    return -a * log(a) * gamma(q / 2) * b**(ratio / 2) * (2 / ((g + log(b) + c) * ratio))**(q / 2)


def bisect(f, lo, hi, it=400):
    lo, hi = mpf(lo), mpf(hi)
    for _ in range(it):
        mid = (lo + hi) / 2
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def bound_cdf(alpha, xi):
    alpha, xi = mpf(alpha), mpf(xi)
    rho = bisect(lambda r: -e * xi * r**xi * log(r) - alpha, mpf(10)**-30, 1 / e)
    return rho**xi


print("F_B")
for xi in ("1", "1.5", "2"):
    for a in ("0.01", "0.05", "0.1", "0.3"):
        print(" ", xi, a, mp.nstr(bound_cdf(a, xi), 20))

print("findley (theta_hat = 0, raw n)")
for n in (100, 1000, 10000):
    for a in ("0.05", "0.01"):
        h = harmonic(n)
        c = pbic_c(0)
        b7 = bf_bic(a, 1, n, c, 1)
        b8 = bf_linear(a, 1, n, 1, h, c)
        print(" ", n, a, *(mp.nstr(x, 20) for x in (b7, b7 / (1 + b7), b8, b8 / (1 + b8))))

print("six-point regression")
x2 = [mpf(v) for v in ("1", "2", "3", "4", "5", "6")]
x3 = [mpf(v) for v in ("2", "1", "4", "3", "6", "8")]
y = [mpf(v) for v in ("1.2", "1.9", "3.4", "3.9", "5.8", "7.1")]
n = len(y)


def fit(cols, resp):
    X = matrix([[1] + [c[i] for c in cols] for i in range(n)])
    XtX = X.T * X
    beta = mp.lu_solve(XtX, X.T * matrix(resp))
    res = [resp[i] - sum(X[i, k] * beta[k] for k in range(X.cols)) for i in range(n)]
    return beta, res, mp.det(XtX)


def css(x):
    m = sum(x) / len(x)
    return sum((v - m)**2 for v in x)


bn, rn, det_null = fit([x2], y)
ba, ra, det_alt = fit([x2, x3], y)
_, proj, _ = fit([x2], x3)
ss2, ss3 = css(x2), css(x3)
m2, m3 = sum(x2) / n, sum(x3) / n
rho = sum((a - m2) * (b - m3) for a, b in zip(x2, x3)) / sqrt(ss2 * ss3)
b = ss3 * (1 - rho**2)
rss0, rss1 = sum(r * r for r in rn), sum(r * r for r in ra)
sigma2 = rss1 / (n - 3)
d2 = sigma2 / ss2
n2e = ss2 / max((v - m2)**2 for v in x2)
v2 = bn[1]**2 / (d2 * (1 + n2e))
pss = sum(p * p for p in proj)
d3 = sigma2 / pss
n3e = pss / max(p * p for p in proj)
v3 = ba[2]**2 / (d3 * (1 + n3e))
f = (rss0 - rss1) / (rss1 / (n - 3))
df = mpf(n - 3)
pval = betainc(df / 2, mpf(1) / 2, 0, df / (df + f), regularized=True)
for name, val in [("rho23", rho), ("b", b), ("b_gram", det_alt / det_null), ("beta2", bn[1]), ("beta3", ba[2]),
                  ("sigma2", sigma2), ("d2", d2), ("n2e", n2e), ("v2", v2), ("d3", d3), ("n3e", n3e), ("v3", v3),
                  ("C", pbic_c(v3) - pbic_c(v2)), ("F", f), ("p", pval)]:
    print(" ", name, mp.nstr(val, 20))
