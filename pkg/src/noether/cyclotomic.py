"""Subfields of the n-th cyclotomic field via exact Gaussian-period
arithmetic.

Elements live in Z[x]/(x^n - 1): reduction is free (fold exponents mod n)
and rational numbers are extracted exactly through Ramanujan sums, so no
floating point enters any minimal polynomial.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd

from .abelian import Subgroup, subgroup_elements, subgroups, unit_group
from .arith import divisors, euler_phi, factor, moebius
from .polyops import (
    Poly,
    discriminant,
    normalize,
    poly_divmod_monic,
    poly_mul,
)


def ramanujan_sum(n: int, j: int) -> int:
    """c_n(j): sum of ζ_n^(j*k) over k coprime to n. Exact closed form."""
    if n < 1:
        raise ValueError("ramanujan_sum() requires n >= 1")
    g = gcd(j % n if n > 1 else 0, n) or n
    m = n // g
    mu = moebius(m)
    if mu == 0:
        return 0
    return mu * euler_phi(n) // euler_phi(m)


@dataclass(frozen=True)
class CycElement:
    """A class in Z[x]/(x^n - 1), i.e. an integer combination of n-th roots
    of unity with exponents mod n."""

    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.n:
            raise ValueError("coefficient vector must have length n")

    def __add__(self, other: "CycElement") -> "CycElement":
        self._check(other)
        return CycElement(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycElement") -> "CycElement":
        self._check(other)
        return CycElement(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "CycElement") -> "CycElement":
        self._check(other)
        n = self.n
        conv = poly_mul(list(self.coeffs), list(other.coeffs))
        out = [0] * n
        for i, c in enumerate(conv):
            out[i % n] += c
        return CycElement(n, tuple(out))

    def scale(self, k: int) -> "CycElement":
        return CycElement(self.n, tuple(k * c for c in self.coeffs))

    def galois_image(self, a: int) -> "CycElement":
        """Image under ζ -> ζ^a, defined for gcd(a, n) = 1."""
        n = self.n
        if gcd(a, n) != 1:
            raise ValueError("galois_image() needs a coprime to n")
        out = [0] * n
        for j, c in enumerate(self.coeffs):
            out[a * j % n] += c
        return CycElement(n, tuple(out))

    def trace(self) -> int:
        """Trace to the rationals: sum of all Galois images' values."""
        n = self.n
        cache = _ramanujan_by_gcd(n)
        return sum(c * cache[gcd(j, n)] for j, c in enumerate(self.coeffs) if c)

    def rational_value(self) -> int:
        """The element's value, provided it is rational (trace/degree).

        Raises if the trace is not divisible by the field degree; a rational
        class always passes.
        """
        t = self.trace()
        phi = euler_phi(self.n)
        q, r = divmod(t, phi)
        if r:
            raise ValueError("element is not rational")
        return q

    def is_zero_value(self) -> bool:
        """True iff the class maps to 0 in Z[ζ_n]."""
        _, rem = poly_divmod_monic(list(self.coeffs), cyclotomic_polynomial(self.n))
        return rem == []

    def _check(self, other: "CycElement") -> None:
        if self.n != other.n:
            raise ValueError("mixed moduli")


@lru_cache(maxsize=None)
def _ramanujan_by_gcd(n: int) -> dict[int, int]:
    return {g: ramanujan_sum(n, g) for g in divisors(n)}


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Poly:
    """Φ_n as an integer coefficient list, by exact divide-out of x^n - 1."""
    if n == 1:
        return [-1, 1]
    f: Poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n):
        if d < n:
            q, r = poly_divmod_monic(f, cyclotomic_polynomial(d))
            assert r == [], "cyclotomic division must be exact"
            f = q
    return f


@dataclass(frozen=True)
class SubfieldDescriptor:
    """A subfield of Q(ζ_n): the fixed field of `subgroup`, presented by the
    minimal polynomial of a primitive Gaussian-period combination.

    period_modulus is the cyclotomic ring the generating period lives in:
    the subfield's conductor, except for the trivial subfield where the
    full modulus is kept so the period stays the classical μ(n)."""

    n: int
    subgroup: Subgroup
    degree: int
    minpoly: tuple[int, ...]
    poly_disc: int
    shape: tuple[int, ...]
    period_modulus: int


def _period_from_residues(modulus: int, residues, shape: tuple[int, ...]) -> CycElement:
    coeffs = [0] * modulus
    for k, c in enumerate(shape, start=1):
        if c:
            for u in residues:
                coeffs[k * u % modulus] += c
    return CycElement(modulus, tuple(coeffs))


def period_element(n: int, h: Subgroup, shape: tuple[int, ...]) -> CycElement:
    """Σ_k shape[k-1] * η^(k) with η^(k) = Σ_{u in h} ζ_n^(k u)."""
    return _period_from_residues(n, subgroup_elements(h), shape)


def conductor(n: int, h: Subgroup) -> int:
    """Smallest f dividing n whose mod-f reduction kernel lies inside h.

    The fixed field of h embeds in Q(ζ_f); returns 1 for the full group.
    Minimality means the result is never ≡ 2 (mod 4): such an f shares its
    kernel with f/2, which divides n and is checked first.
    """
    hset = frozenset(subgroup_elements(h))
    if len(hset) == euler_phi(n):
        return 1
    for f in divisors(n):
        if f < 3 or f == n:
            continue
        if all(u in hset for u in range(1, n, f) if gcd(u, n) == 1):
            return f
    return n


def _reduced_residues(h: Subgroup, modulus: int) -> list[int]:
    if modulus == h.group.n:
        return subgroup_elements(h)
    return sorted({u % modulus for u in subgroup_elements(h)})


def generating_period(sd: SubfieldDescriptor) -> CycElement:
    """The exact period element whose minimal polynomial is sd.minpoly."""
    pm = sd.period_modulus
    return _period_from_residues(pm, _reduced_residues(sd.subgroup, pm), sd.shape)


def _shape_schedule(max_len: int, budget: int = 100_000):
    """(1), (1,1), (1,2), (1,0,1), (1,0,2), ... ordered by length then lex.

    Lengths may run past the subfield degree: even at the conductor a
    single coset-sum period can be degenerate (rational, or generating a
    proper subfield), so the schedule keeps extending until the budget
    runs out.
    """
    yield (1,)
    count = 1
    for m in range(2, max_len + 1):
        for prefix in product((0, 1, 2), repeat=m - 2):
            for last in (1, 2):
                yield (1,) + prefix + (last,)
                count += 1
                if count >= budget:
                    return


def subfield_minpoly(n: int, h: Subgroup) -> SubfieldDescriptor:
    """Monic integer minimal polynomial of the fixed field of h.

    The field is first cut down to its conductor f: for imprimitive
    subfields of a non-squarefree modulus every coset-sum period at the
    full modulus vanishes identically (the sum telescopes over reduction
    kernels), while at the conductor the periods are small and faithful.
    There, power sums of the period's conjugates are read off exactly
    through traces, Newton's identities produce the coefficients, and a
    nonzero polynomial discriminant certifies the period was primitive.
    Degenerate shapes are skipped deterministically.
    """
    phi = euler_phi(n)
    d = phi // h.order
    f = n if d == 1 else conductor(n, h)
    residues = _reduced_residues(h, f)
    phi_f = euler_phi(f)
    assert phi_f == d * len(residues), "conductor reduction must preserve degree"
    for shape in _shape_schedule(f - 1):
        theta = _period_from_residues(f, residues, shape)
        power = theta
        psums = [0] * (d + 1)
        for k in range(1, d + 1):
            if k > 1:
                power = power * theta
            num = d * power.trace()
            assert num % phi_f == 0, "conjugate power sum must be rational"
            psums[k] = num // phi_f
        # Newton: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i
        es = [1] + [0] * d
        for k in range(1, d + 1):
            acc = 0
            for i in range(1, k + 1):
                term = es[k - i] * psums[i]
                acc += term if i % 2 else -term
            q, r = divmod(acc, k)
            if r:
                raise AssertionError("Newton identity division failed")
            es[k] = q
        g = [0] * (d + 1)
        for k in range(d + 1):
            g[d - k] = es[k] if k % 2 == 0 else -es[k]
        disc = discriminant(g)
        if disc != 0:
            return SubfieldDescriptor(n, h, d, tuple(g), disc, shape, f)
    raise ValueError(
        f"no primitive period combination found for modulus {n}, subgroup "
        f"index {h.index}: schedule budget exhausted at conductor {f}")


def subfields(n: int, max_degree: int) -> list[SubfieldDescriptor]:
    """One descriptor per subfield of Q(ζ_n) of degree <= max_degree,
    ordered by degree then by minimal polynomial coefficients."""
    if n < 3:
        raise ValueError("subfields() requires n >= 3")
    g = unit_group(n)
    out = [subfield_minpoly(n, h) for h in subgroups(g, max_index=max_degree)]
    out.sort(key=lambda s: (s.degree, s.minpoly))
    return out
