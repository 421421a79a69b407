"""Structure of (Z/nZ)* and enumeration of its subgroups.

The unit group is presented in invariant-factor form (orders d_1, d_2, ...
with d_{i+1} | d_i, one explicit generator per factor). Subgroups are
encoded as Hermite-normal-form bases of the integer lattices sitting
between diag(d)*Z^k and Z^k; HNF is canonical per lattice, so enumeration
is duplicate-free by construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import product

from .arith import divisors, euler_phi, factor


def _primitive_root(p: int) -> int:
    """Smallest primitive root modulo an odd prime p."""
    phi = p - 1
    prime_factors = [q for q, _ in factor(phi)]
    g = 2
    while True:
        if all(pow(g, phi // q, p) != 1 for q in prime_factors):
            return g
        g += 1


def _primary_components(n: int) -> list[tuple[int, int]]:
    """Cyclic decomposition of (Z/nZ)* as (order, generator mod n) pairs.

    One or two components per prime power in n, combined through CRT so each
    generator is a residue mod n that is 1 modulo the other prime powers.
    """
    parts = []  # (modulus q^e, [(order, generator mod q^e), ...])
    for q, e in factor(n):
        m = q**e
        if q == 2:
            if e == 1:
                gens = []
            elif e == 2:
                gens = [(2, 3)]
            else:
                gens = [(2, m - 1), (2 ** (e - 2), 3)]
        else:
            g = _primitive_root(q)
            if e > 1 and pow(g, q - 1, q * q) == 1:
                g += q
            gens = [(euler_phi(m), g % m)]
        parts.append((m, gens))

    out = []
    for m, gens in parts:
        rest = n // m
        for order, g in gens:
            if rest == 1:
                out.append((order, g % n))
            else:
                # CRT lift: ≡ g (mod m), ≡ 1 (mod n/m)
                inv = pow(rest, -1, m)
                lifted = (1 + rest * ((g - 1) * inv % m)) % n
                out.append((order, lifted))
    return out


@dataclass(frozen=True)
class UnitGroup:
    """Invariant-factor presentation of (Z/nZ)*."""

    n: int
    cyclic_orders: tuple[int, ...]
    generators: tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.cyclic_orders:
            out *= d
        return out


@lru_cache(maxsize=None)
def unit_group(n: int) -> UnitGroup:
    """Canonical invariant-factor decomposition of (Z/nZ)* with generators."""
    if n < 3:
        raise ValueError("unit_group() requires n >= 3")
    comps = _primary_components(n)

    # group the prime-power pieces by prime, largest exponents first
    by_prime: dict[int, list[tuple[int, int, int]]] = {}
    for order, g in comps:
        for q, a in factor(order):
            qa = q**a
            # element of order q^a inside the cyclic group generated by g
            by_prime.setdefault(q, []).append((qa, pow(g, order // qa, n), 0))
    for q in by_prime:
        by_prime[q].sort(key=lambda t: -t[0])

    k = max(len(v) for v in by_prime.values()) if by_prime else 0
    orders, gens = [], []
    for i in range(k):
        d = 1
        g = 1
        for q, pieces in by_prime.items():
            if i < len(pieces):
                qa, elem, _ = pieces[i]
                d *= qa
                g = g * elem % n
        orders.append(d)
        gens.append(g)
    if not orders:  # n = 3, 4, 6 have nontrivial groups; only n<3 is trivial
        orders, gens = [1], [1]
    assert reduce(lambda a, b: a * b, orders) == euler_phi(n)
    for a, b in zip(orders, orders[1:]):
        assert a % b == 0
    return UnitGroup(n, tuple(orders), tuple(gens))


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of (Z/nZ)*, encoded by an upper-triangular HNF basis.

    Rows of hnf are exponent vectors over the invariant-factor generators;
    the row lattice contains diag(cyclic_orders)*Z^k. Entry (i, j) for j > i
    lies in [0, hnf[j][j]).
    """

    group: UnitGroup
    hnf: tuple[tuple[int, ...], ...]

    @property
    def index(self) -> int:
        out = 1
        for i, row in enumerate(self.hnf):
            out *= row[i]
        return out

    @property
    def order(self) -> int:
        return self.group.order // self.index

    def elements(self) -> list[int]:
        return subgroup_elements(self)


def _contains_diagonal(hnf: list[list[int]], d: tuple[int, ...]) -> bool:
    """Does the row lattice of hnf contain every d_j * e_j?"""
    k = len(d)
    for j in range(k):
        # solve sum_i c_i row_i = d_j e_j by forward substitution; rows
        # i < j contribute nothing (their pivot columns would be nonzero)
        if d[j] % hnf[j][j]:
            return False
        coeff = [0] * k
        coeff[j] = d[j] // hnf[j][j]
        for m in range(j + 1, k):
            s = sum(coeff[i] * hnf[i][m] for i in range(j, m))
            if s % hnf[m][m]:
                return False
            coeff[m] = -(s // hnf[m][m])
    return True


def subgroups(g: UnitGroup, max_index: int | None = None) -> list[Subgroup]:
    """Every subgroup of g exactly once (index <= max_index when given),
    ordered by index ascending then lexicographic HNF."""
    d = g.cyclic_orders
    k = len(d)
    cap = max_index if max_index is not None else g.order
    found: list[Subgroup] = []
    diag_choices = []
    for j in range(k):
        diag_choices.append([h for h in divisors(d[j])])
    for diag in product(*diag_choices):
        idx = 1
        for h in diag:
            idx *= h
        if idx > cap:
            continue
        off_ranges = []
        for i in range(k):
            for j in range(i + 1, k):
                off_ranges.append(range(diag[j]))
        for offs in product(*off_ranges):
            hnf = [[0] * k for _ in range(k)]
            pos = 0
            for i in range(k):
                hnf[i][i] = diag[i]
                for j in range(i + 1, k):
                    hnf[i][j] = offs[pos]
                    pos += 1
            if _contains_diagonal(hnf, d):
                found.append(Subgroup(g, tuple(tuple(r) for r in hnf)))
    found.sort(key=lambda s: (s.index, s.hnf))
    return found


def subgroup_elements(h: Subgroup) -> list[int]:
    """Residues mod n in the subgroup, sorted ascending."""
    g = h.group
    n = g.n
    gen_images = []
    for row in h.hnf:
        img = 1
        for e, base in zip(row, g.generators):
            img = img * pow(base, e, n) % n
        gen_images.append(img)
    seen = {1}
    frontier = [1]
    while frontier:
        x = frontier.pop()
        for gi in gen_images:
            y = x * gi % n
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    assert len(seen) == h.order
    return sorted(seen)
