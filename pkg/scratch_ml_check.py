"""Dev scratch: validate ml against an mpmath oracle over the usage domain.

Oracle rule learned the hard way: every gamma argument must be built with
mpmath arithmetic (mp.mpf(b) + mp.mpf(a)*k); float-rounded arguments poison
the sum once the cancellation level exceeds ~1e14.
"""
import numpy as np
import mpmath as mp

from fracgreen.mittag_leffler import ml


def oracle_taylor(a, b, z, dps=None):
    saddle = abs(z) ** (1.0 / a)
    if dps is None:
        dps = int(0.5 * saddle + 60)
    with mp.workdps(dps):
        am, bm, zz = mp.mpf(a), mp.mpf(b), mp.mpc(z)
        s = mp.mpf(0)
        term = mp.mpc(1)
        dec, prev = 0, mp.inf
        for k in range(400000):
            c = term * mp.rgamma(bm + am * k)
            s += c
            term *= zz
            at = abs(c)
            dec = dec + 1 if at < prev else 0
            prev = at
            if dec > 5 and at < mp.mpf(10) ** (-dps + 8) * max(abs(s), mp.mpf(1e-40)):
                break
        else:
            raise RuntimeError("oracle did not converge")
        return complex(s)


def oracle_asym(a, b, z):
    """Descending series truncated on its sine-free envelope; returns (value, bound)."""
    with mp.workdps(60):
        am, bm, zz = mp.mpf(a), mp.mpf(b), mp.mpc(z)
        s = mp.mpf(0)
        env_prev = mp.inf
        bound = mp.inf
        for k in range(1, 4000):
            x = 1 + am * k - bm
            g = mp.mpf("1.2") if x < 0.5 else mp.gamma(x) / mp.pi
            env = abs(zz) ** (-k) * g
            if env > env_prev and x >= 1.5:
                bound = env
                break
            s += -zz ** (-k) * mp.rgamma(bm - am * k)
            bound = env
            env_prev = env
            if env < mp.mpf("1e-40") * max(abs(s), mp.mpf("1e-40")):
                break
        if abs(mp.arg(zz)) < am * mp.pi:
            zs = zz ** (1 / am)
            s += mp.exp(zs) * zs ** (1 - bm) / am
        return complex(s), float(bound / max(abs(s), mp.mpf("1e-300")))


def oracle(a, b, z):
    saddle = abs(z) ** (1.0 / a)
    if saddle <= 120:
        return oracle_taylor(a, b, z)
    val, bound = oracle_asym(a, b, z)
    if bound > 1e-18:
        return oracle_taylor(a, b, z)
    return val


rng = np.random.default_rng(42)
worst, worst_case, fails = 0.0, None, []
N = 300
for i in range(N):
    a = rng.uniform(0.3, 1.0)
    b = rng.uniform(0.3, 2.0)
    ray = rng.choice([np.pi, np.pi - a * np.pi / 2, np.pi + a * np.pi / 2])
    r = 10 ** rng.uniform(np.log10(0.5), np.log10(50.0))
    ang = ray if ray <= np.pi else ray - 2 * np.pi
    z = r * np.exp(1j * ang)
    try:
        got = ml(a, b, z, tol=1e-11)
    except Exception as e:
        fails.append((a, b, z, repr(e)))
        continue
    want = oracle(a, b, z)
    rel = abs(got - want) / max(abs(want), 1e-300)
    if rel > worst:
        worst, worst_case = rel, (a, b, z, got, want)

print("N =", N, "fails:", len(fails))
for f in fails[:8]:
    print("FAIL", f)
print("worst rel err:", worst)
print("worst case:", worst_case)

# oracle self-consistency in the overlap band
za = 40 ** 0.9 * np.exp(1j * 2.6)
print("oracle overlap gap:", abs(oracle_taylor(0.9, 1.1, za) - oracle_asym(0.9, 1.1, za)))

print("e check:", ml(1, 1, 1.0) - np.e)
print("cos check:", ml(2, 1, -(np.pi / 2) ** 2))
print("frozen (0.8,0.9,-2.5):", oracle(0.8, 0.9, -2.5), ml(0.8, 0.9, -2.5, tol=1e-12))
print("a>1: E_{1.4,1}(-3):", ml(1.4, 1.0, -3.0), oracle(1.4, 1.0, -3.0))
print("a=1,b=0.7,z=-20:", ml(1.0, 0.7, -20.0), oracle(1.0, 0.7, -20.0))
print("a=1,b=1.6,z=-8:", ml(1.0, 1.6, -8.0), oracle(1.0, 1.6, -8.0))
print("E_{0.5,0.67}(-7.5):", ml(0.5, 0.67, -7.5), "(want 0.028362443958360791)")
