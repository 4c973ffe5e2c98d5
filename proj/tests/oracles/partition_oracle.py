"""Brute-force oracle for stopping-time antichains on small systems.

Enumerates every word up to a fixed depth and applies the set definitions
directly, with exact fractions. Used to freeze expected values in the C++
unit tests; it shares no code with the library.
"""
from fractions import Fraction as F
from itertools import product


def words(alpha, depth):
    for n in range(depth + 1):
        for w in product(range(1, alpha + 1), repeat=n):
            yield w


def prod(vals, w):
    x = F(1)
    for a in w:
        x *= vals[a - 1]
    return x


def analyse(p, s, t, c, r, k, depth=14, idepth=14):
    """r must be a positive integer here so every quantity is rational."""
    N, M = len(p), len(t)
    fo = [p[i] * s[i] ** r for i in range(N)]
    fi = [t[j] * c[j] ** r for j in range(M)]
    eta = min(fo + fi)
    T = eta ** k
    gamma = [w for w in words(N, depth) if len(w) >= 1
             and prod(fo, w[:-1]) >= T > prod(fo, w)]
    l1 = min(len(w) for w in gamma)
    l2 = max(len(w) for w in gamma)
    gset = set(gamma)
    lam = [w for w in words(N, l2) if len(w) >= l1
           and any(g[:len(w)] == w and len(g) > len(w) for g in gamma)]
    psi = [w for w in words(N, l1 - 1)] + lam
    inner = {}
    for sg in psi:
        x = prod(fo, sg)
        inner[sg] = [w for w in words(M, idepth) if len(w) >= 1
                     and x * prod(fi, w[:-1]) >= T > x * prod(fi, w)]
    phi = len(gamma) + sum(len(v) for v in inner.values())
    bracket_cyl = sum(prod(fo, sg) * prod(fi, rh) for sg in psi for rh in inner[sg])
    bracket_tail = sum(prod(fo, g) for g in gamma)
    mass = (1 - sum(p)) * sum(prod(p, sg) * sum(prod(t, rh) for rh in inner[sg]) for sg in psi) \
        + sum(prod(p, g) for g in gamma)
    return dict(N=len(gamma), l1=l1, l2=l2, psi=len(psi), lam=len(lam), phi=phi,
                cyl=bracket_cyl, tail=bracket_tail, mass=mass, eta=eta)


if __name__ == "__main__":
    third, half = F(1, 3), F(1, 2)
    ex = dict(p=[third, third], s=[F(1, 4), F(1, 4)], t=[half, half], c=[F(1, 8), F(1, 8)])
    for k in range(1, 7):
        a = analyse(r=2, k=k, **ex)
        print("ex315 r=2 k=%d" % k, {kk: (str(v) if isinstance(v, F) else v) for kk, v in a.items()})
    # non-uniform fixture A
    fa = dict(p=[F(1, 2), F(1, 4)], s=[F(1, 4), F(1, 5)], t=[F(1, 3), F(2, 3)], c=[F(1, 8), F(1, 6)])
    for k in range(1, 5):
        a = analyse(r=2, k=k, **fa)
        print("fixA r=2 k=%d" % k, {kk: (str(v) if isinstance(v, F) else v) for kk, v in a.items()})
    for k in range(1, 4):
        a = analyse(r=1, k=k, **ex)
        print("ex315 r=1 k=%d" % k, {kk: (str(v) if isinstance(v, F) else v) for kk, v in a.items()})
