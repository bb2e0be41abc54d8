# Regenerates the Taylor tables used by the Riemann-Siegel remainder in
# src/zeta_eval/riemann_siegel.rs. Coefficients are in powers of x = p - 1/2.
from mpmath import mp, mpf, pi, cos, sin, factorial

mp.dps = 80
M = 110  # series length before differentiation


def series_div(num, den):
    out = []
    for n in range(len(num)):
        acc = num[n] - sum(den[k] * out[n - k] for k in range(1, n + 1))
        out.append(acc / den[0])
    return out


# psi(x) = -cos(2 pi x^2 - 5 pi / 8) / cos(2 pi x)
c, s = cos(5 * pi / 8), sin(5 * pi / 8)
num = [mpf(0)] * M
for k in range(M // 4 + 1):
    # cos(2 pi x^2) and sin(2 pi x^2) in powers of x^2
    if 4 * k < M:
        num[4 * k] += c * (-1) ** k * (2 * pi) ** (2 * k) / factorial(2 * k)
    if 4 * k + 2 < M:
        num[4 * k + 2] += s * (-1) ** k * (2 * pi) ** (2 * k + 1) / factorial(2 * k + 1)
den = [mpf(0)] * M
for k in range(M // 2):
    den[2 * k] = -((-1) ** k) * (2 * pi) ** (2 * k) / factorial(2 * k)
psi = series_div(num, den)


def deriv(a, j):
    return [a[n + j] * factorial(n + j) / factorial(n) for n in range(len(a) - j)]


def comb(*parts):
    L = min(len(p) for _, p in parts)
    return [sum(w * p[n] for w, p in parts) for n in range(L)]


d = {j: deriv(psi, j) for j in range(13)}
C = [
    psi,
    comb((-1 / (96 * pi**2), d[3])),
    comb((1 / (64 * pi**2), d[2]), (1 / (18432 * pi**4), d[6])),
    comb((-1 / (64 * pi**2), d[1]), (-1 / (3840 * pi**4), d[5]), (-1 / (5308416 * pi**6), d[9])),
    comb((1 / (128 * pi**2), psi), (19 / (24576 * pi**4), d[4]),
         (11 / (5898240 * pi**6), d[8]), (1 / (2038431744 * pi**8), d[12])),
]
for k, ck in enumerate(C):
    # keep terms that matter on |x| <= 1/2
    keep = [v for n, v in enumerate(ck)]
    last = max(n for n, v in enumerate(keep) if abs(v) * mpf(0.5) ** n > mpf(10) ** -22)
    print(f"const C{k}: [f64; {last + 1}] = [")
    for v in keep[: last + 1]:
        print(f"    {mp.nstr(v, 20, min_fixed=0, max_fixed=0)},")
    print("];")
