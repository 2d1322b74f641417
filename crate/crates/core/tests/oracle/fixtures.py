"""Reference values for the frozen fixtures in tests/fixtures.rs.

Independent of the Rust code: exact rational phases, 50-digit arithmetic,
brute-force enumeration of every centre, mpmath quadrature for H_j.
Run with `python3 fixtures.py`; paste the printed values into fixtures.rs.
"""
from fractions import Fraction
from math import comb, gcd

import mpmath as mp

mp.mp.dps = 50
ORDER = 4


def smoothstep(x):
    if x <= 0:
        return mp.mpf(0)
    if x >= 1:
        return mp.mpf(1)
    n = ORDER
    return sum((-1) ** k * comb(n + k, k) * comb(2 * n + 1, n - k) * x ** (n + 1 + k) for k in range(n + 1))


def eta(x):
    a = abs(x)
    if a <= 1:
        return mp.mpf(1)
    if a >= 2:
        return mp.mpf(0)
    return 1 - smoothstep(a - 1)


def psi(t):
    if t == 0:
        return mp.mpf(0)
    return (eta(t) - eta(2 * t)) / t


def psi_j(t, j):
    s = mp.mpf(2) ** (-j)
    return s * psi(s * t)


def e(t):
    return mp.expj(2 * mp.pi * t)


def show(name, z):
    z = mp.mpc(z)
    print(f"{name}: re={mp.nstr(z.real, 20)} im={mp.nstr(z.imag, 20)}")


# Incomplete Weyl sum with c_2 = sqrt(2) - 1 as the double the test uses.
c2 = mp.mpf(2.0**0.5 - 1.0)
show("incomplete_sqrt2", mp.fsum(e(c2 * n * n) for n in range(1, 1001)))

# M_j(1/4, 1/3), j = 5, d = 2.
lam, beta = mp.mpf(0.25), mp.mpf(1 / 3)
show("mj_5", mp.fsum(psi_j(m, 5) * e(-lam * m * m - beta * m) for m in range(-64, 65)))


def hilbert_weight(m, big_j):
    if abs(m) == 1:
        return mp.mpf(1) / m
    return mp.fsum(psi_j(m, j) for j in range(1, big_j + 1))


# M(1/2, 1/2), J = 8, d = 2.
lam, beta = mp.mpf(0.5), mp.mpf(0.5)
show("m_8", mp.fsum(hilbert_weight(m, 8) * e(-lam * m * m - beta * m) for m in range(-511, 512) if m != 0))

# K_j(10, -10), j = 6, lambda(x) = x / 2^12, mu = 0.
lx = mp.mpf(10) / 2**12
show("kj_6", mp.fsum(psi_j(10 - m, 6) * psi_j(-10 - m, 6) * e(lx * (10 - m) ** 2) for m in range(-200, 201)))


def weyl(a, b, q, d):
    return mp.fsum(e(-Fraction(a * r**d + b * r, q) % 1) for r in range(1, q + 1)) / q


def h_j(x, y, j, d):
    a, b = x * mp.mpf(2) ** (j * d), y * mp.mpf(2) ** j
    f = lambda t: e(-a * t**d - b * t) * psi(t)
    pts = [-2, -1.5, -1, -0.75, -0.5, 0.5, 0.75, 1, 1.5, 2]
    return mp.quad(f, [mp.mpf(p) for p in pts[:5]]) + mp.quad(f, [mp.mpf(p) for p in pts[5:]])


# Circle-method defaults: d = 2, epsilon = 0.1, kappa = 0.05, C = 2, chi constant 1/(8d).
D, KAPPA, CEXP = 2, 0.05, 2.0
CHI_C = mp.mpf(1) / (8 * D)


def xset_width_exp(j):
    return int(round(D * j - mp.log(mp.mpf(j) ** CEXP, 2)))


def chi_s(t, s):
    scale = mp.mpf(2) ** (mp.mpf(2) ** (s * D * mp.mpf(KAPPA)))
    return eta(t * scale / CHI_C)


def centred(x):
    return x - mp.floor(x + mp.mpf(0.5))


def l_js_bruteforce(lam, beta, j, s):
    w = mp.mpf(2) ** (-xset_width_exp(j))
    total = mp.mpc(0)
    for q in range(2 ** (s - 1), 2**s):
        for a in range(q):
            dl = centred(lam - mp.mpf(a) / q)
            if abs(dl) > w:
                continue
            cl = chi_s(dl, s)
            if cl == 0:
                continue
            for b in range(q):
                if gcd(gcd(a, b), q) != 1:
                    continue
                db = centred(beta - mp.mpf(b) / q)
                cb = chi_s(db, s)
                if cb == 0:
                    continue
                total += weyl(a, b, q, D) * h_j(dl, db, j, D) * cl * cb
    return total


def s_range(j):
    jc = mp.mpf(j) ** CEXP
    s = 0
    while 2 ** (s + 1) <= jc:
        s += 1
    return range(1, s + 1)


lam = mp.mpf(0.5 + 2.0**-25)
show("ljs_10_2", l_js_bruteforce(lam, mp.mpf(0.5), 10, 2))

lam, beta = mp.mpf(1 / 3 + 2.0**-22), mp.mpf(2 / 3 + 2.0**-12)
show("lj_10", mp.fsum(l_js_bruteforce(lam, beta, 10, s) for s in s_range(10)))
for s in s_range(10):
    show(f"  ljs_10_{s}", l_js_bruteforce(lam, beta, 10, s))

# Off-symmetry companions of the two fixtures above that vanish identically.
lam, beta = mp.mpf(0.3), mp.mpf(0.1)
show("m_8_offsym", mp.fsum(hilbert_weight(m, 8) * e(-lam * m * m - beta * m) for m in range(-511, 512) if m != 0))
lam = mp.mpf(0.5 + 2.0**-25)
show("ljs_10_2_offsym", l_js_bruteforce(lam, mp.mpf(0.5 + 2.0**-13), 10, 2))
