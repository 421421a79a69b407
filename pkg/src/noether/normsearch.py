"""Norm-equation tooling: exact norms, certificate search, backend client.

The norm of an element a(t) in the number field Q[x]/(g) is the product of
a over all roots of g, computed exactly as a resultant.  A small-coefficient
element whose norm hits a target integer is a positive certificate; searching
the coefficient box for one is `certificate_search`.  Negative (unsolvability)
answers for fields of degree > 2 are delegated to an external solver process
speaking a line-delimited JSON protocol; every claim it makes is either
re-verified locally (witnesses) or tagged with its certification flags
(unsolvable), never trusted blindly.
"""

from __future__ import annotations

import json
import math
import os
import shlex
import subprocess
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .arith import is_prime
from .polyops import degree, is_squarefree_poly, normalize, resultant

__all__ = [
    "NormProblem",
    "BackendDecision",
    "BackendError",
    "BackendUnavailableError",
    "BackendProtocolError",
    "BackendVerificationError",
    "BackendClient",
    "norm_of",
    "certificate_search",
    "backend_decide",
]

BACKEND_ENV_VAR = "NOETHER_BACKEND"


def norm_of(g: Sequence[int], a: Sequence[int]) -> int:
    """Exact field norm of a(t) in Q[x]/(g): the product of a over the
    roots of g, as the resultant Res(g, a).

    g must be monic (low-order coefficients first).  Squarefreeness of g is
    the caller's responsibility; it is checked where problems are built, not
    in this inner loop.
    """
    gn = normalize(list(g))
    if degree(gn) < 1 or gn[-1] != 1:
        raise ValueError("g must be monic of degree >= 1")
    return resultant(gn, normalize(list(a)))


@dataclass(frozen=True)
class NormProblem:
    """Ask whether some algebraic integer in Q[x]/(minpoly) has norm target."""

    minpoly: tuple[int, ...]
    target: int

    def __post_init__(self) -> None:
        g = normalize(list(self.minpoly))
        if degree(g) < 1 or g[-1] != 1:
            raise ValueError("minpoly must be monic of degree >= 1")
        if tuple(g) != tuple(self.minpoly):
            raise ValueError("minpoly must be given in normalized form")
        if not is_squarefree_poly(list(g)):
            raise ValueError("minpoly must be squarefree")
        if not is_prime(abs(self.target)):
            raise ValueError("|target| must be prime")

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1


@dataclass(frozen=True)
class BackendDecision:
    """Backend verdict for a NormProblem.

    outcome is one of "solvable", "unsolvable", "unknown".  Only
    outcome == "unsolvable" constitutes proof of unsolvability, and it is
    only produced for certified answers (after any GRH downgrade).  A
    "solvable" outcome always carries a locally re-verified witness.
    """

    outcome: str
    witness: Optional[tuple[int, ...]]
    certified: bool
    grh: bool


class BackendError(Exception):
    pass


class BackendUnavailableError(BackendError):
    pass


class BackendProtocolError(BackendError):
    pass


class BackendVerificationError(BackendError):
    pass


def _up(x: float) -> float:
    return math.nextafter(x, math.inf)


def _root_enclosures(g: list[int]) -> tuple[np.ndarray, np.ndarray, bool]:
    """Approximate roots of monic g with certified per-root radii.

    Returns (roots, radii, paired).  The union of the closed discs
    D(roots[j], radii[j]) contains every root of g; when the discs are
    pairwise disjoint (paired = True) disc j contains exactly one root.
    The radius is the classical Weierstrass bound deg(g) * |g(z_j)| /
    prod_{k != j} |z_j - z_k|, rounded outward.
    """
    d = degree(g)
    z = np.roots(list(reversed(g)))
    radii = np.empty(d)
    for j in range(d):
        val = complex(0)
        for c in reversed(g):
            val = val * complex(z[j]) + c
        denom = 1.0
        for k in range(d):
            if k != j:
                denom *= abs(complex(z[j]) - complex(z[k]))
        if denom == 0.0:
            radii[j] = math.inf
        else:
            radii[j] = _up(_up(d * abs(val)) / denom) * (1.0 + 1e-9) + 1e-300
    paired = True
    for j in range(d):
        if not math.isfinite(radii[j]):
            paired = False
            break
        for k in range(j + 1, d):
            if abs(complex(z[j]) - complex(z[k])) <= radii[j] + radii[k]:
                paired = False
    return z, radii, paired


def certificate_search(prob: NormProblem, bound: int) -> Optional[tuple[int, ...]]:
    """Search the box of coefficient vectors with entries in [-bound, bound]
    for an element of exact norm prob.target.

    Candidates are taken in descending lexicographic order over
    (a_0, ..., a_{d-1}) and the first exact hit is returned; None means no
    element of the box works (the box is exhausted, with pruning that only
    discards candidates whose norm provably cannot equal the target).

    Pruning evaluates every candidate at floating-point enclosures of the
    roots of the minimal polynomial; each |a(root)| gets a rigorous interval
    (evaluation rounding error plus certified root-radius drift, both rounded
    outward), and a candidate survives only if the interval product can cover
    |target|.  Survivors are confirmed with the exact resultant norm.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    g = list(prob.minpoly)
    d = prob.degree
    t = prob.target
    if d == 1:
        # norm of the constant a0 is a0 itself
        return (t,) if abs(t) <= bound else None

    z, radii, paired = _root_enclosures(g)
    base = 2 * bound + 1
    total = base**d

    # uniform per-root margin over the whole box (|a_i| <= bound):
    #   evaluation error of the numpy dot product, plus the worst drift of
    #   a(theta) as theta moves within its certified disc
    eps = math.ulp(1.0)
    margins = np.empty(d)
    for j in range(d):
        r = abs(complex(z[j]))
        big = _up(r + radii[j]) if paired else _up(r + float(np.max(radii)))
        s = 0.0
        drift = 0.0
        power = 1.0
        for i in range(d):
            s = _up(s + _up(bound * power))
            if i >= 1:
                drift = _up(drift + _up(bound * i * _up(big ** (i - 1))))
            power = _up(power * max(r, big))
        evalerr = _up(16.0 * d * eps * s)
        rootrad = radii[j] if paired else float(np.max(radii))
        if not math.isfinite(rootrad):
            # give up on pruning entirely: infinite margin keeps everything
            margins[j] = math.inf
        else:
            margins[j] = _up(evalerr + _up(drift * rootrad))

    vand = np.vander(z, N=d, increasing=True).T  # vand[i, j] = z_j ** i
    abs_t = abs(t)
    chunk = 1 << 15
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = np.empty((len(idx), d), dtype=np.int64)
        rem = idx
        for i in range(d - 1, -1, -1):
            rem, digits[:, i] = np.divmod(rem, base)
        cand = bound - digits  # index order == descending lex over coeffs
        vals = cand.astype(np.float64) @ vand
        mags = np.abs(vals)
        lo = np.prod(np.maximum(mags - margins, 0.0), axis=1) * (1.0 - 1e-9)
        hi = (np.prod(mags + margins, axis=1) + 1e-300) * (1.0 + 1e-9)
        keep = np.nonzero((lo <= abs_t) & (abs_t <= hi))[0]
        for k in keep:
            a = [int(c) for c in cand[k]]
            if norm_of(g, a) == t:
                return tuple(a)
    return None


class BackendClient:
    """Client for one external norm-equation solver child process.

    The protocol is line-delimited JSON on the child's standard streams.
    Request:  {"id": n, "minpoly": [c0, ..., cd], "target": t}
    Response: {"id": n, "outcome": "solvable"|"unsolvable"|"unknown",
               "witness": [a0, ..., a_{d-1}] (required when solvable),
               "certified": bool, "grh": bool}

    A client owns its child process and must be used by one thread at a
    time; run several clients for parallelism.
    """

    def __init__(self, command: Union[str, Sequence[str]]):
        args = shlex.split(command) if isinstance(command, str) else list(command)
        if not args:
            raise BackendUnavailableError("empty backend command")
        self.command = args
        self._next_id = 0
        try:
            self._proc = subprocess.Popen(
                args,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                stderr=subprocess.DEVNULL,
                text=True,
                bufsize=1,
            )
        except OSError as exc:
            raise BackendUnavailableError(f"cannot start backend {args[0]!r}: {exc}") from exc

    def decide(self, prob: NormProblem, grh_allowed: bool = False) -> BackendDecision:
        """Forward prob to the backend and translate its answer.

        Solvable answers are re-verified locally before being accepted.
        Uncertified or GRH-only (when grh_allowed is false) unsolvability
        claims are downgraded to unknown.  Protocol violations raise, they
        never silently degrade.
        """
        self._next_id += 1
        rid = self._next_id
        req = {"id": rid, "minpoly": list(prob.minpoly), "target": prob.target}
        if self._proc.poll() is not None:
            raise BackendUnavailableError("backend process has exited")
        try:
            assert self._proc.stdin is not None
            self._proc.stdin.write(json.dumps(req) + "\n")
            self._proc.stdin.flush()
        except (BrokenPipeError, OSError, ValueError) as exc:
            raise BackendUnavailableError(f"cannot write to backend: {exc}") from exc
        assert self._proc.stdout is not None
        line = self._proc.stdout.readline()
        if not line:
            raise BackendUnavailableError("backend closed its output stream")
        try:
            resp = json.loads(line)
        except json.JSONDecodeError as exc:
            raise BackendProtocolError(f"backend sent invalid JSON: {line!r}") from exc
        if not isinstance(resp, dict):
            raise BackendProtocolError(f"backend response is not an object: {resp!r}")
        if resp.get("id") != rid:
            raise BackendProtocolError(
                f"backend answered id {resp.get('id')!r}, expected {rid}"
            )
        outcome = resp.get("outcome")
        if outcome not in ("solvable", "unsolvable", "unknown"):
            raise BackendProtocolError(f"backend sent unknown outcome {outcome!r}")
        certified = resp.get("certified")
        grh = resp.get("grh")
        if not isinstance(certified, bool) or not isinstance(grh, bool):
            raise BackendProtocolError("backend response missing certified/grh booleans")

        if outcome == "solvable":
            witness = resp.get("witness")
            if (
                not isinstance(witness, list)
                or len(witness) != prob.degree
                or not all(isinstance(c, int) and not isinstance(c, bool) for c in witness)
            ):
                raise BackendProtocolError(
                    f"solvable response needs an integer witness of length {prob.degree}"
                )
            got = norm_of(list(prob.minpoly), witness)
            if got != prob.target:
                raise BackendVerificationError(
                    f"backend witness has norm {got}, wanted {prob.target}"
                )
            return BackendDecision("solvable", tuple(witness), certified, grh)
        if outcome == "unsolvable":
            if not certified:
                return BackendDecision("unknown", None, certified, grh)
            if grh and not grh_allowed:
                return BackendDecision("unknown", None, certified, grh)
            return BackendDecision("unsolvable", None, certified, grh)
        return BackendDecision("unknown", None, certified, grh)

    def close(self) -> None:
        proc = getattr(self, "_proc", None)
        if proc is None:
            return
        try:
            if proc.stdin is not None:
                proc.stdin.close()
        except OSError:
            pass
        try:
            proc.wait(timeout=2)
        except subprocess.TimeoutExpired:
            proc.kill()
            proc.wait()

    def __enter__(self) -> "BackendClient":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()

    def __del__(self) -> None:
        try:
            self.close()
        except Exception:
            pass


def backend_decide(
    prob: NormProblem,
    grh_allowed: bool = False,
    command: Union[str, Sequence[str], None] = None,
) -> BackendDecision:
    """One-shot backend query; command falls back to $NOETHER_BACKEND."""
    if command is None:
        command = os.environ.get(BACKEND_ENV_VAR)
    if not command:
        raise BackendUnavailableError(
            f"no backend configured (set {BACKEND_ENV_VAR} or pass a command)"
        )
    with BackendClient(command) as client:
        return client.decide(prob, grh_allowed)
