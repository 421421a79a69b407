"""Exact arithmetic on integer polynomials (coefficient lists, low degree
first).

Multiplication of large polynomials goes through Kronecker substitution:
coefficients are packed into fixed-width byte slots of one huge integer and
the whole product becomes a single big-int multiply. That keeps the
1-second-per-field budget for minimal polynomials at modulus ~20000.
"""
from __future__ import annotations

try:
    from gmpy2 import mpz

    _HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - gmpy2 is a hard dep, belt and braces
    mpz = int
    _HAVE_GMPY2 = False

Poly = list[int]

_SCHOOLBOOK_CUTOFF = 48


def normalize(p: Poly) -> Poly:
    """Strip trailing zero coefficients; the zero polynomial is []."""
    i = len(p)
    while i > 0 and p[i - 1] == 0:
        i -= 1
    return p[:i]


def degree(p: Poly) -> int:
    """Degree, with deg 0 = -1 by convention."""
    return len(normalize(p)) - 1


def poly_add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = a[:]
    for i, c in enumerate(b):
        out[i] += c
    return normalize(out)


def poly_neg(a: Poly) -> Poly:
    return [-c for c in a]


def poly_scale(a: Poly, k: int) -> Poly:
    if k == 0:
        return []
    return [c * k for c in a]


def _conv_schoolbook(a: Poly, b: Poly) -> Poly:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _conv_kronecker_nonneg(a: Poly, b: Poly) -> Poly:
    """Convolution of nonnegative-coefficient polynomials via byte packing."""
    max_a = max(a)
    max_b = max(b)
    if max_a == 0 or max_b == 0:
        return [0] * (len(a) + len(b) - 1)
    bound = min(len(a), len(b)) * max_a * max_b
    slot = (bound.bit_length() + 8) // 8  # slot width in bytes, with headroom

    def pack(p: Poly) -> int:
        buf = bytearray(len(p) * slot)
        for i, c in enumerate(p):
            buf[i * slot:i * slot + (c.bit_length() + 7) // 8] = c.to_bytes(
                (c.bit_length() + 7) // 8, "little")
        return int.from_bytes(buf, "little")

    prod = int(mpz(pack(a)) * mpz(pack(b)))
    out_len = len(a) + len(b) - 1
    data = prod.to_bytes(out_len * slot + slot, "little")
    return [
        int.from_bytes(data[i * slot:(i + 1) * slot], "little")
        for i in range(out_len)
    ]


def poly_mul(a: Poly, b: Poly) -> Poly:
    """Exact product of integer polynomials."""
    a = normalize(a)
    b = normalize(b)
    if not a or not b:
        return []
    if min(len(a), len(b)) <= _SCHOOLBOOK_CUTOFF:
        return normalize(_conv_schoolbook(a, b))
    if min(a) >= 0 and min(b) >= 0:
        return normalize(_conv_kronecker_nonneg(a, b))
    # split into nonnegative parts: a = ap - an, b = bp - bn
    ap = [c if c > 0 else 0 for c in a]
    an = [-c if c < 0 else 0 for c in a]
    bp = [c if c > 0 else 0 for c in b]
    bn = [-c if c < 0 else 0 for c in b]
    out = [0] * (len(a) + len(b) - 1)
    for pa, pb, sign in ((ap, bp, 1), (an, bn, 1), (ap, bn, -1), (an, bp, -1)):
        if max(pa, default=0) and max(pb, default=0):
            part = _conv_kronecker_nonneg(pa, pb)
            for i, c in enumerate(part):
                out[i] += sign * c
    return normalize(out)


def poly_divmod_monic(a: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Quotient and remainder of a by monic g, exact over Z."""
    g = normalize(g)
    if not g or g[-1] != 1:
        raise ValueError("divisor must be monic")
    r = list(a)
    d = len(g) - 1
    if d == 0:
        return normalize(r), []
    q = [0] * max(len(r) - d, 0)
    for i in range(len(r) - 1, d - 1, -1):
        c = r[i]
        if c:
            q[i - d] = c
            for j in range(d + 1):
                r[i - d + j] -= c * g[j]
    return normalize(q), normalize(r[:d])


def poly_eval(p: Poly, x: int) -> int:
    out = 0
    for c in reversed(p):
        out = out * x + c
    return out


def derivative(p: Poly) -> Poly:
    return normalize([i * c for i, c in enumerate(p)][1:])


def _pseudo_rem(a: Poly, b: Poly) -> Poly:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a reduced by b."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    da = len(a) - 1
    e = da - db + 1
    while len(a) - 1 >= db and a:
        la = a[-1]
        a = [c * lb for c in a]
        shift = len(a) - 1 - db
        for j in range(db + 1):
            a[shift + j] -= la * b[j]
        a = normalize(a)
        e -= 1
    if e > 0:
        a = [c * lb**e for c in a]
    return normalize(a)


def resultant(f: Poly, g: Poly) -> int:
    """Res(f, g) by the subresultant PRS, exact integer arithmetic."""
    a = normalize(f)
    b = normalize(g)
    if not a or not b:
        return 0
    da, db = len(a) - 1, len(b) - 1
    if da == 0:
        return a[0] ** db
    if db == 0:
        return b[0] ** da
    s = 1
    if da < db:
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        a, b = b, a
        da, db = db, da
    gg = 1
    hh = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        r = _pseudo_rem(a, b)
        if not r:
            return 0
        a = b
        denom = gg * hh**delta
        b = [c // denom for c in r]
        assert [c * denom for c in b] == r, "subresultant divisibility broken"
        gg = a[-1]
        if delta >= 1:
            num = gg**delta
            assert num % hh ** (delta - 1) == 0 or delta == 1
            hh = num // hh ** (delta - 1) if delta > 1 else num
        if len(b) - 1 == 0:
            da = len(a) - 1  # >= 1: degrees strictly decrease from deg >= 1
            num = b[0] ** da
            denom = hh ** (da - 1)
            assert num % denom == 0, "subresultant divisibility broken"
            return s * (num // denom)


def discriminant(g: Poly) -> int:
    """Discriminant of monic g: (-1)^(d(d-1)/2) * Res(g, g')."""
    g = normalize(g)
    if not g or g[-1] != 1:
        raise ValueError("discriminant() expects a monic polynomial")
    d = len(g) - 1
    if d == 0:
        return 1
    if d == 1:
        return 1
    r = resultant(g, derivative(g))
    return -r if (d * (d - 1) // 2) % 2 else r


def is_squarefree_poly(g: Poly) -> bool:
    """True iff monic g has no repeated complex root."""
    return discriminant(g) != 0
