"""Search for the first layer k_1^ac: sieve the radicals with split primes q."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterable, Iterator

import mpmath
from sympy import nextprime

from . import kernels
from .class_imag import class_group_object, principal_generator
from .padlog import minus_log_test
from .quadfield import QuadField, kronecker_symbol, split_prime_power, _roots_mod_prime
from .radicals import (
    CaseTag,
    CubicCandidate,
    Radical,
    classify,
    cubic_candidate,
    cubic_disc,
    enumerate_radicals,
    is_irreducible,
    radical_basis,
)
from .rayclass import TorsionData, t_k

log = logging.getLogger(__name__)

Q_MIN = 5
Q_MAX_DEFAULT = 10**5
SOUNDNESS_TAIL = 20


class NoSolution(Exception):
    """Every radical was eliminated: the true layer never is, so this is a bug."""


class Ambiguous(Exception):
    """More than one radical survived; retry with a larger q_max."""

    def __init__(self, result: "LayerResult"):
        super().__init__(f"m={result.m}: {result.delta} radicals survive q <= {result.q_interval[1]}")
        self.result = result


@dataclass
class LayerResult:
    m: int
    case: CaseTag
    val: int
    torsion: TorsionData
    winner: Radical | None
    Q: CubicCandidate | None
    ram_status: str
    delta: int
    q_interval: tuple
    sigma_flag: bool
    method: str  # "shortcut" or "sieve"
    candidates: list = field(default_factory=list)  # (Radical, CubicCandidate) per J
    eliminated_by: dict = field(default_factory=dict)  # J -> prime q, or "disc"
    accepted_primes: int = 0
    one_root_events: list = field(default_factory=list)  # (J, q)
    soundness_checked: int = 0
    soundness_ok: bool = True


# -- elementary tests -----------------------------------------------------------------


def cubic_irreducible_mod(coeffs, q: int) -> bool:
    """True iff the monic cubic has no root modulo the prime q."""
    c2, c1, c0 = coeffs
    return not kernels.cubic_has_root(c2 % q, c1 % q, c0 % q, q)


def root_count_mod(coeffs, q: int) -> int | None:
    """Number of roots modulo q for q not dividing disc; None otherwise."""
    disc = cubic_disc(coeffs)
    if disc % q == 0:
        return None
    if not kernels.cubic_has_root(coeffs[0] % q, coeffs[1] % q, coeffs[2] % q, q):
        return 0
    return 1 if kronecker_symbol(disc, q) == -1 else 3


def split_primes(m: int, q_min: int = Q_MIN, q_max: int = Q_MAX_DEFAULT) -> Iterator[int]:
    q = nextprime(q_min - 1)
    while q <= q_max:
        if kronecker_symbol(-m, q) == 1:
            yield q
        q = nextprime(q)


class PrimeSieve:
    """Accepted primes for k: split q whose beta passes the minus-log gate."""

    def __init__(self, k: QuadField, val: int):
        self.k = k
        self.val = val
        data = class_group_object(k).class_data()
        self.n = data.hta * data.Exp

    def beta(self, q: int):
        r = _roots_mod_prime(self.k, q)[0]
        B = split_prime_power(self.k, q, r, self.n)
        return principal_generator(self.k, B)

    def accepted(self, q: int) -> bool:
        if kronecker_symbol(-self.k.m, q) != 1:
            return False
        ok, _ = minus_log_test(self.beta(q), self.val)
        return ok


def sieve_prime(k: QuadField, q: int, val: int) -> bool:
    return PrimeSieve(k, val).accepted(q)


# -- the search ----------------------------------------------------------------------


def find_first_layer(
    m: int,
    q_max: int = Q_MAX_DEFAULT,
    shortcut: bool = True,
    raise_ambiguous: bool = False,
) -> LayerResult:
    k = QuadField(m)
    case = classify(m)
    T = t_k(k)
    data = class_group_object(k).class_data()
    rads = enumerate_radicals(radical_basis(case))
    cands = [(r, cubic_candidate(r.w)) for r in rads]
    res = LayerResult(
        m=m, case=case, val=T.Val, torsion=T, winner=None, Q=None,
        ram_status=T.ram_status, delta=0, q_interval=(Q_MIN, q_max),
        sigma_flag=True, method="sieve", candidates=cands,
    )
    live = {r.index for r, _ in cands}
    by_index = {r.index: (r, c) for r, c in cands}

    if shortcut and data.h3 >= 3 * T.otbp and data.rk3 == 1:
        res.method = "shortcut"
        for J, (_, c) in by_index.items():
            if c.fld_disc_v3 > 1:
                res.eliminated_by[J] = "disc"
                live.discard(J)
    else:
        sieve = PrimeSieve(k, T.Val)
        accepted = []
        primes = split_primes(m, Q_MIN, q_max)
        for q in primes:
            if len(live) <= 1:
                break
            if not sieve.accepted(q):
                continue
            accepted.append(q)
            for J in sorted(live):
                coeffs = by_index[J][1].coeffs
                if cubic_irreducible_mod(coeffs, q):
                    res.eliminated_by[J] = q
                    by_index[J][1].eliminated_by = q
                    live.discard(J)
                elif root_count_mod(coeffs, q) == 1:
                    res.one_root_events.append((J, q))
                    log.info("m=%d: one-root factorization of J=%d at accepted q=%d", m, J, q)
        res.accepted_primes = len(accepted)
        if len(live) == 1:
            # soundness: the survivor splits completely at accepted primes
            J = next(iter(live))
            coeffs = by_index[J][1].coeffs
            tail = []
            for q in primes:
                if len(tail) >= SOUNDNESS_TAIL:
                    break
                if sieve.accepted(q):
                    tail.append(q)
            checks = [root_count_mod(coeffs, q) for q in accepted + tail]
            checks = [c for c in checks if c is not None]
            res.soundness_checked = len(checks)
            res.soundness_ok = all(c == 3 for c in checks)
            if not res.soundness_ok:
                log.warning("m=%d: survivor J=%d fails to split at an accepted prime", m, J)

    res.delta = len(live)
    res.sigma_flag = res.delta != 1
    if res.delta == 0:
        raise NoSolution(f"m={m}: every radical eliminated")
    if res.delta == 1:
        J = next(iter(live))
        res.winner, res.Q = by_index[J]
    elif raise_ambiguous:
        raise Ambiguous(res)
    return res


def find_with_retry(m: int, q_maxes=(10**5, 5 * 10**5), shortcut: bool = True) -> LayerResult:
    """The ListSigma protocol: rerun an ambiguous field with a larger prime interval."""
    res = None
    for q_max in q_maxes:
        res = find_first_layer(m, q_max=q_max, shortcut=shortcut)
        if not res.sigma_flag:
            return res
    return res


@dataclass
class BatchItem:
    m: int
    result: LayerResult | None
    error: str | None


def batch(ms: Iterable[int], q_max: int = Q_MAX_DEFAULT, shortcut: bool = True,
          case_filter: set | None = None) -> Iterator[BatchItem]:
    """Per-m results; failures are reported per item and never stop the stream."""
    for m in ms:
        try:
            if case_filter is not None and classify(m).tag not in case_filter:
                continue
            yield BatchItem(m, find_first_layer(m, q_max=q_max, shortcut=shortcut), None)
        except Exception as exc:  # isolate the item
            log.warning("m=%d failed: %s", m, exc)
            yield BatchItem(m, None, f"{type(exc).__name__}: {exc}")


# -- field equality -----------------------------------------------------------------


EQUAL, DISTINCT, INCONCLUSIVE = "equal", "distinct", "inconclusive"


def _is_square_rational(q: Fraction) -> bool:
    if q <= 0:
        return False
    n, d = q.numerator, q.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


def same_cubic_field(Q1, Q2, exact: bool = True, screen_primes: int = 100) -> str:
    """Do two monic integral cubics (c2, c1, c0) define the same field?"""
    for c in (Q1, Q2):
        if not is_irreducible(c):
            raise ValueError("reducible cubic")
    if tuple(Q1) == tuple(Q2):
        return EQUAL
    d1, d2 = cubic_disc(Q1), cubic_disc(Q2)
    # disc(Q) = index^2 * d_K
    if not _is_square_rational(Fraction(d1, d2)):
        return DISTINCT
    q, seen = 2, 0
    while seen < screen_primes:
        q = nextprime(q)
        if d1 % q == 0 or d2 % q == 0:
            continue
        seen += 1
        if root_count_mod(Q1, q) != root_count_mod(Q2, q):
            return DISTINCT
    if not exact:
        return INCONCLUSIVE
    if abs(d1) > abs(d2):
        Q1, Q2, d1, d2 = Q2, Q1, d2, d1
    return EQUAL if root_in_field(Q1, Q2, d1) is not None else INCONCLUSIVE


def _eval_mod(poly_coeffs, g, mod_coeffs):
    """Q2(g(x)) modulo the monic cubic Q1, exact; all lists low degree first."""
    def mulmod(a, b):
        p = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    p[i + j] += x * y
        c0, c1, c2 = mod_coeffs
        for kdeg in range(len(p) - 1, 2, -1):
            t = p[kdeg]
            if t:
                p[kdeg] = Fraction(0)
                p[kdeg - 1] -= t * c2
                p[kdeg - 2] -= t * c1
                p[kdeg - 3] -= t * c0
        return (p + [Fraction(0)] * 3)[:3]

    acc = [Fraction(1), Fraction(0), Fraction(0)]  # Horner, leading coefficient 1
    for c in poly_coeffs:
        acc = mulmod(acc, g)
        acc[0] += c
    return acc


def root_in_field(Q1, Q2, d1: int):
    """g in Q[x]/Q1 with Q2(g) = 0, or None; denominators divide disc(Q1)."""
    size = max(abs(c) for c in (*Q1, *Q2, d1)) or 1
    dps = 3 * len(str(size)) + 60
    with mpmath.workdps(dps):
        r1 = mpmath.polyroots([1, *Q1], maxsteps=500, extraprec=4 * dps)
        r2 = mpmath.polyroots([1, *Q2], maxsteps=500, extraprec=4 * dps)
        V = mpmath.matrix([[1, r, r * r] for r in r1])
        from itertools import permutations

        for perm in permutations(range(3)):
            rhs = mpmath.matrix([r2[p] for p in perm])
            try:
                sol = mpmath.lu_solve(V, rhs)
            except ZeroDivisionError:
                continue
            g = []
            for c in sol:
                n = mpmath.nint(mpmath.re(c) * d1)
                g.append(Fraction(int(n), d1))
            c2, c1, c0 = Q2
            val = _eval_mod([c2, c1, c0], g, (Q1[2], Q1[1], Q1[0]))
            if all(v == 0 for v in val):
                return g
    return None
