#!/usr/bin/env python3
"""Independent high-precision oracles for the frozen values in the C++ tests.

Run with: python3 tests/oracles/compute_oracles.py
Every value printed here is hard-coded in a test; none of it goes through the
library code path it checks.
"""
import mpmath as mp
import sympy as sp

mp.mp.dps = 40
x = sp.symbols("x", real=True)
psi = (1 - x**2) * sp.exp(-x**2 / 2)


def show(label, value):
    print(f"{label:48s} {mp.nstr(mp.mpf(value), 20)}")


show("psi(2)", sp.N(psi.subs(x, 2), 40))
show("D4 psi(1)", sp.N(sp.diff(psi, x, 4).subs(x, 1), 40))
show("D1 psi(-1)", sp.N(sp.diff(psi, x, 1).subs(x, -1), 40))
show("D2 psi(0)", sp.N(sp.diff(psi, x, 2).subs(x, 0), 40))
for k in range(0, 9):
    show(f"D{k} psi(0.7)", sp.N(sp.diff(psi, x, k).subs(x, sp.Rational(7, 10)), 40))

for alpha in (0, 1, 2, 3, 4, 6):
    show(f"mu_{alpha}(mexican hat)", sp.N(sp.integrate(x**alpha * psi, (x, -sp.oo, sp.oo)), 40))

show("int exp(-x^2/2) on [-12,12]", mp.quad(lambda t: mp.exp(-t * t / 2), [-12, 12]))
show("int psi^2", sp.N(sp.integrate(psi**2, (x, -sp.oo, sp.oo)), 40))
show("cwt delta' at 0, a=1,b=1 (= -psi'(-1))", -sp.N(sp.diff(psi, x).subs(x, -1), 40))

# Taylor coefficients of psi about -b/a for a=2, b=1 from the P_2 closed form
a, b = sp.Integer(2), sp.Integer(1)
pref = sp.exp(-b**2 / (2 * a**2)) / a**2
for k, c in enumerate([(a**2 - b**2), b * (3 * a**2 - b**2) / a, (6 * a**2 * b**2 - 3 * a**4 - b**4) / (2 * a**2)]):
    show(f"P2 coeff {k} (a=2,b=1)", sp.N(pref * c, 40))

# Smooth bump exp(-1/(1-t^2)), t=(x-c)/w, c=0.5, w=1 : moments
def bump(t):
    return mp.exp(-1 / (1 - t * t)) if abs(t) < 1 else mp.mpf(0)

for alpha in range(0, 5):
    show(f"mu_{alpha}(bump c=0.5,w=1)", mp.quad(lambda s: bump(s - mp.mpf("0.5")) * s**alpha, [-0.5, 0.5, 1.5]))

# Direct CWT of the bump at a=4, b=1 (reference for the transform tests)
def mh(y):
    return (1 - y * y) * mp.exp(-y * y / 2)

for (aa, bb) in ((4, 1), (100, 1)):
    val = mp.quad(lambda s: bump(s - mp.mpf("0.5")) * mh((s - bb) / mp.mpf(aa)), [-0.5, 0.5, 1.5]) / mp.sqrt(aa)
    show(f"cwt(bump, MH, a={aa}, b={bb})", val)

# Gaussian density, MH wavelet, a=2, b=1
val = mp.quad(lambda s: mp.exp(-s * s / 2) * mh((s - 1) / mp.mpf(2)), [-mp.inf, mp.inf]) / mp.sqrt(2)
show("cwt(gauss, MH, a=2, b=1)", val)

# Gamma-form small-a coefficients next to the oracle moments
for k in range(0, 4):
    gamma_form = -mp.power(2, mp.mpf(2 * k - 1) / 2) * mp.gamma(mp.mpf(2 * k + 1) / 2)
    show(f"gamma-form small-a coefficient alpha={k}", gamma_form)

# Seminorm decay oracle: sup of |psi_q^{(alpha)}((x-b)/a) * a^-alpha| over (b/a-M, b+M)
def seminorm(q, alpha, bb, M, aa):
    taylor = sp.series(psi, x, 0, q).removeO() if q > 0 else 0
    g = sp.diff(psi - taylor, x, alpha)
    gf = sp.lambdify(x, g, "mpmath")
    lo, hi = mp.mpf(bb) / aa - M, mp.mpf(bb) + M
    n = 4000
    best = mp.mpf(0)
    for i in range(n + 1):
        xx = lo + (hi - lo) * i / n
        best = max(best, abs(gf((xx - bb) / aa)) / mp.power(aa, alpha))
    return best

for (q, alpha, bb) in ((1, 0, 0), (3, 1, 2), (0, 0, 0)):
    grid = [16, 32, 64, 128]
    vals = [seminorm(q, alpha, bb, 1, mp.mpf(g)) for g in grid]
    xs = [mp.log(g) for g in grid]
    ys = [mp.log(v) for v in vals]
    xm, ym = sum(xs) / len(xs), sum(ys) / len(ys)
    slope = sum((u - xm) * (v - ym) for u, v in zip(xs, ys)) / sum((u - xm) ** 2 for u in xs)
    show(f"seminorm slope q={q} alpha={alpha} b={bb}", slope)
