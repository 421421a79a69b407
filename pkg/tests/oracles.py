"""Independent brute-force oracles shared by the test suite.

Each oracle is written against the mathematical definition only, with no
imports from the package modules it checks. Slow on purpose where slowness
buys obviousness.
"""
from __future__ import annotations

from itertools import combinations
from math import gcd, isqrt

import numpy as np


# --------------------------------------------------------------------- arith
def naive_is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, isqrt(n) + 1))


def naive_factor(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def naive_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


# ------------------------------------------------------------------- abelian
def unit_residues(n: int) -> list[int]:
    return [a for a in range(1, n) if gcd(a, n) == 1]


def closure(n: int, gens: tuple[int, ...]) -> frozenset[int]:
    """Multiplicative closure of gens in (Z/nZ)*."""
    seen = {1}
    frontier = [1]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g % n
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return frozenset(seen)


def extend_subgroup(n: int, s: frozenset[int], g: int) -> frozenset[int]:
    """Subgroup generated by the subgroup s together with one extra unit g.

    Walks the cosets s, s*g, s*g^2, ... until a power of g lands back in
    s; their union is the generated subgroup since the group is abelian.
    """
    out = set(s)
    x = g
    while x not in s:
        out.update(y * x % n for y in s)
        x = x * g % n
    return frozenset(out)


def all_subgroups_brute(n: int) -> set[frozenset[int]]:
    """Every subgroup of (Z/nZ)*, by breadth-first generator extension.

    Start from the trivial subgroup and repeatedly extend (found subgroup
    plus one more element).  Every subgroup is reachable this way because
    it can be built by adjoining its generators one at a time, so the
    enumeration is exhaustive regardless of rank.
    """
    us = unit_residues(n)
    trivial = closure(n, ())
    subs = {trivial}
    frontier = [trivial]
    while frontier:
        s = frontier.pop()
        for g in us:
            if g not in s:
                bigger = extend_subgroup(n, s, g)
                if bigger not in subs:
                    subs.add(bigger)
                    frontier.append(bigger)
    return subs


# ------------------------------------------------------------------ quadforms
def principal_form_coeffs(D: int) -> tuple[int, int, int]:
    b = D & 1
    return 1, b, (b - D) // 4


def represents_oracle(D: int, target: int, bound: int) -> tuple[int, int] | None:
    """Search x^2 + bxy + cy^2 = target over |x|, |y| <= bound.

    Vectorized over y: for fixed y the form is quadratic in x with
    discriminant D y^2 + 4 t; x exists iff that is a perfect square with the
    right parity. Exact because every intermediate fits well under 2^53.
    """
    _, b, c = principal_form_coeffs(D)
    ys = np.arange(-bound, bound + 1, dtype=np.int64)
    disc = D * ys * ys + 4 * target
    ok = disc >= 0
    if not ok.any():
        return None
    roots = np.sqrt(disc[ok].astype(np.float64))
    r = np.rint(roots).astype(np.int64)
    exact = r * r == disc[ok]
    for y, rr in zip(ys[ok][exact], r[exact]):
        for s in (rr, -rr):
            num = s - b * y
            if num % 2 == 0:
                x = num // 2
                if abs(x) <= 10 * bound and x * x + b * x * y + c * y * y == target:
                    return int(x), int(y)
    return None


# ----------------------------------------------------------------- normsearch
def companion_det_norm(g: list[int], a: list[int]) -> int:
    """Norm of a mod g as det of a's action on Z[x]/(g), via Bareiss.

    g is monic (leading coefficient 1), given low-to-high; a low-to-high of
    length < deg g.
    """
    d = len(g) - 1
    assert g[-1] == 1
    # companion matrix C of g: columns are multiplication-by-x images
    cols = []
    for j in range(d):
        col = [0] * d
        if j + 1 < d:
            col[j + 1] = 1
        else:
            col = [-g[i] for i in range(d)]
        cols.append(col)

    def mat_mul_vec(m, v):
        return [sum(m[i][j] * v[j] for j in range(d)) for i in range(d)]

    # matrix of multiplication by a(C): build columns a(C) e_j
    mat_c = [[cols[j][i] for j in range(d)] for i in range(d)]
    basis = [[1 if i == j else 0 for i in range(d)] for j in range(d)]
    acc = [[0] * d for _ in range(d)]
    power = basis
    coeffs = list(a) + [0] * (d - len(a))
    for k in range(d):
        for j in range(d):
            for i in range(d):
                acc[i][j] += coeffs[k] * power[j][i]
        power = [mat_mul_vec(mat_c, col) for col in power]

    # Bareiss fraction-free elimination for the exact determinant
    m = [row[:] for row in acc]
    sign = 1
    prev = 1
    for k in range(d - 1):
        if m[k][k] == 0:
            for swap in range(k + 1, d):
                if m[swap][k] != 0:
                    m[k], m[swap] = m[swap], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, d):
            for j in range(k + 1, d):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[d - 1][d - 1]
