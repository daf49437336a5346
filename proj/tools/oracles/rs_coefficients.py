"""Taylor coefficients of the Riemann-Siegel correction terms C_0..C_4.

Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p).  With w = p - 1/2 this is
-cos(2 pi w^2 - 5 pi / 8) / cos(2 pi w), an even entire function of w.  Its
Taylor series is built by exact power-series arithmetic at 80 digits, then
C_k is assembled from derivatives of Psi (Edwards' formulas) and printed as
coefficients in powers of w, truncated once |c_j| 2^-j < 1e-22.
"""
import mpmath as mp

mp.mp.dps = 80
DEG = 90


def mul(a, b):
    out = [mp.mpf(0)] * (DEG + 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j in range(DEG + 1 - i):
            out[i + j] += x * b[j]
    return out


def inv(a):
    out = [mp.mpf(0)] * (DEG + 1)
    out[0] = 1 / a[0]
    for n in range(1, DEG + 1):
        s = mp.mpf(0)
        for j in range(1, n + 1):
            s += a[j] * out[n - j]
        out[n] = -s / a[0]
    return out


def cos_series(c, power):
    # cos(c * w^power)
    out = [mp.mpf(0)] * (DEG + 1)
    m = 0
    while power * 2 * m <= DEG:
        out[power * 2 * m] = (-1) ** m * c ** (2 * m) / mp.factorial(2 * m)
        m += 1
    return out


def sin_series(c, power):
    out = [mp.mpf(0)] * (DEG + 1)
    m = 0
    while power * (2 * m + 1) <= DEG:
        out[power * (2 * m + 1)] = (-1) ** m * c ** (2 * m + 1) / mp.factorial(2 * m + 1)
        m += 1
    return out


two_pi = 2 * mp.pi
num = [mp.cos(5 * mp.pi / 8) * x + mp.sin(5 * mp.pi / 8) * y
       for x, y in zip(cos_series(two_pi, 2), sin_series(two_pi, 2))]
psi = [-x for x in mul(num, inv(cos_series(two_pi, 1)))]


def deriv(a, r):
    out = list(a)
    for _ in range(r):
        out = [out[i + 1] * (i + 1) for i in range(len(out) - 1)] + [mp.mpf(0)]
    return out


def comb(*terms):
    out = [mp.mpf(0)] * (DEG + 1)
    for coef, r in terms:
        d = deriv(psi, r)
        for i in range(DEG + 1):
            out[i] += coef * d[i]
    return out


pi = mp.pi
C = [
    comb((1, 0)),
    comb((-1 / (96 * pi**2), 3)),
    comb((1 / (18432 * pi**4), 6), (1 / (64 * pi**2), 2)),
    comb((-1 / (5308416 * pi**6), 9), (-1 / (3840 * pi**4), 5), (-1 / (64 * pi**2), 1)),
    comb((1 / (2038431744 * pi**8), 12), (11 / (5898240 * pi**6), 8),
         (19 / (24576 * pi**4), 4), (1 / (128 * pi**2), 0)),
]

print("// Generated by tools/oracles/rs_coefficients.py. Do not edit.")
print("// Taylor coefficients of C_k(p) in powers of w = p - 1/2.")
for k, series in enumerate(C):
    last = max(i for i, c in enumerate(series[:DEG - 12]) if abs(c) * mp.mpf(2) ** (-i) > mp.mpf("1e-22"))
    print(f"inline constexpr double kRiemannSiegelC{k}[] = {{")
    for i in range(last + 1):
        print(f"    {mp.nstr(series[i], 22, min_fixed=-80, max_fixed=80, strip_zeros=False)},")
    print("};")
