"""Referee one disputed ML value with three independent mpmath routes."""
import mpmath as mp
import numpy as np

a, b = 0.586148176600088, 0.6699684953848353
z = complex(-4.544808695904598, 5.9774491180394405)

# 1) Taylor, very high precision
with mp.workdps(200):
    zz = mp.mpc(z)
    s = mp.mpf(0)
    for k in range(4000):
        s += zz**k * mp.rgamma(b + a * k)
    taylor = complex(s)
print("taylor   :", taylor)

# 2) GLL real-line kernel (valid |arg z| > a*pi, b <= 1+a)
with mp.workdps(40):
    zz = mp.mpc(z)
    assert abs(mp.arg(zz)) > a * mp.pi

    def K(r):
        num = r * mp.sin(mp.pi * (1 - b)) - zz * mp.sin(mp.pi * (1 - b + a))
        den = r * r - 2 * r * zz * mp.cos(mp.pi * a) + zz * zz
        return (1 / (mp.pi * a)) * r ** ((1 - b) / a) * mp.exp(-r ** (1 / a)) * num / den

    gll = complex(mp.quad(K, [0, abs(z), 10 * abs(z), mp.inf]))
print("gll      :", gll)

# 3) asymptotic with optimal truncation
with mp.workdps(60):
    zz = mp.mpc(z)
    s = mp.mpf(0)
    best = mp.inf
    k = 1
    while True:
        t = -zz ** (-k) * mp.rgamma(b - a * k)
        if abs(t) >= best:
            break
        s += t
        best = abs(t)
        k += 1
    print("asym     :", complex(s), "min term", float(best))

from fracgreen.mittag_leffler import ml, _eval_contour, _eval_asymptotic
print("mine     :", ml(a, b, z, tol=1e-11))
va, ea, oka = _eval_asymptotic(a, b, np.array([z]), 1e-11)
print("mine asym:", va[0], ea[0], oka[0])
vc, ec, okc = _eval_contour(a, b, np.array([z]), 1e-11)
print("mine cont:", vc[0], ec[0], okc[0])
