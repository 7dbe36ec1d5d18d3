"""Real quadratic fields: reduced-ideal cycles, wide class group, units, pseudo-units."""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from . import kernels
from .abgroup import AbGroup, build_structure
from .class_imag import BoundExceeded, ClassData, class_data_from, three_part
from .quadfield import (
    NotPrincipal,
    QuadElement,
    QuadField,
    QuadIdeal,
    factor_rational_prime,
    prime_to_3_rep,
)

DESK_BOUND = 10**10
UNIT_BIT_BUDGET = 2**20


class SizeLimit(Exception):
    pass


@dataclass(frozen=True)
class UnitData:
    eps: QuadElement
    regulator_proxy: int
    norm_eps: int
    period: int


def _theta(F: QuadField, b: int) -> QuadElement:
    """(b + sqrt(D))/2 as an element of F."""
    if F.D == F.d:
        return QuadElement(F, Fraction(b, 2), Fraction(1, 2))
    return QuadElement(F, Fraction(b, 2), Fraction(1))


def ideal_to_ab(I: QuadIdeal) -> tuple[int, tuple[int, int]]:
    """I = g * [a, (b + sqrt D)/2]; returns (g, (a, b))."""
    g, J = I.primitive()
    return g, (J.a, 2 * J.b + I.F.t)


def ab_to_ideal(F: QuadField, ab) -> QuadIdeal:
    a, b = ab
    return QuadIdeal(F, a, ((b - F.t) // 2) % a, 1)


class RealField:
    """Infrastructure of a real quadratic field."""

    def __init__(self, F: QuadField, bound: int = DESK_BOUND, bit_budget: int = UNIT_BIT_BUDGET):
        if not F.is_real:
            raise ValueError("real field expected")
        if F.D > bound:
            raise BoundExceeded("D", F.D, bound)
        self.F = F
        self.D = F.D
        self.s = isqrt(F.D)
        self.bit_budget = bit_budget
        ideals, cid, ncyc = kernels.real_cycles(F.D)
        self._cid = dict(zip(ideals, cid))
        self.h = ncyc
        reps = [None] * ncyc
        for f, c in zip(ideals, cid):
            if reps[c] is None:
                reps[c] = f
        self._reps = reps
        self.one = self._reduced_ab(1, self.D & 1)
        self._unit = None
        self._group = None

    # -- reduction -----------------------------------------------------

    def _is_reduced(self, a, b):
        s = self.s
        return 0 < b <= s and s - b + 1 <= 2 * a <= s + b

    def _reduced_ab(self, a, b):
        """[a, (b+sqrt D)/2] with b normalized into the reduced window."""
        return a, self.s - (self.s - b) % (2 * a)

    def _normalize_b(self, a, b):
        if a * a < self.D:
            return self._reduced_ab(a, b)
        return a, b + 2 * a * ((a - b) // (2 * a))  # -a < b <= a

    def rho(self, a, b):
        """I = mu * rho(I); returns (rho(I), mu)."""
        c = (b * b - self.D) // (4 * a)
        mu = _theta(self.F, b) / c
        a2, b2 = self._normalize_b(abs(c), -b)
        return (a2, b2), mu

    def reduce(self, a, b, track=True):
        """Reduce a primitive ideal; returns ((a, b), mu) with I = mu * reduced."""
        a, b = self._normalize_b(a, b)
        mu = QuadElement(self.F, 1) if track else None
        steps = 0
        while not self._is_reduced(a, b):
            (a, b), step = self.rho(a, b)
            if track:
                mu = mu * step
            steps += 1
            if steps > 10000:
                raise RuntimeError("reduction did not terminate")
        return (a, b), mu

    def class_id(self, I: QuadIdeal) -> int:
        _, ab = ideal_to_ab(I)
        red, _ = self.reduce(*ab, track=False)
        return self._cid[red]

    # -- units -------------------------------------------------------------

    def fundamental_unit(self) -> UnitData:
        if self._unit is None:
            start = self.one
            ab, eps = self.rho(*start)
            period = 1
            while ab != start:
                ab, mu = self.rho(*ab)
                eps = eps * mu
                period += 1
                if period % 64 == 0 and _bits(eps) > self.bit_budget:
                    raise SizeLimit(f"fundamental unit exceeds {self.bit_budget} bits")
            eps = _normalize_gt_one(eps)
            nrm = eps.norm()
            if nrm not in (1, -1):
                raise RuntimeError("cycle product is not a unit")
            self._unit = UnitData(eps, _bits(eps), int(nrm), period)
        return self._unit

    # -- class group -------------------------------------------------------

    def class_group(self) -> tuple[AbGroup, ClassData]:
        if self._group is None:
            F = self.F

            def mul(c1, c2):
                I = ab_to_ideal(F, self._reps[c1]) * ab_to_ideal(F, self._reps[c2])
                return self.class_id(I)

            ident = self._cid[self.one]
            invariants, gens, table = build_structure(range(self.h), mul, ident, self.h)
            self._table = table
            gen_ideals = []
            for vec, basis in gens:
                I = F.unit_ideal()
                for e, g in zip(vec, basis):
                    e %= self.h
                    if e:
                        I = _reduce_ideal(self, I * ab_to_ideal(F, self._reps[g]) ** e)
                gen_ideals.append(I)
            self._group = AbGroup(invariants, gen_ideals, self.dlog)
        return self._group, class_data_from(self._group)

    def dlog(self, I: QuadIdeal) -> list[int]:
        if self._group is None:
            self.class_group()
        return list(self._table[self.class_id(I)])

    # -- principal ideals --------------------------------------------------

    def principal_generator(self, I: QuadIdeal, normalize: bool = True) -> QuadElement:
        g, ab = ideal_to_ab(I)
        red, mu = self.reduce(*ab)
        if self._cid[red] != self._cid[self.one]:
            raise NotPrincipal(repr(I))
        steps = 0
        while red != self.one:
            red, step = self.rho(*red)
            mu = mu * step
            steps += 1
            if steps % 64 == 0 and _bits(mu) > self.bit_budget:
                raise SizeLimit(f"generator exceeds {self.bit_budget} bits")
        gamma = mu * g
        if normalize:
            gamma = self.normalize_mod_units(gamma)
        return gamma

    def normalize_mod_units(self, gamma: QuadElement) -> QuadElement:
        """Balance gamma against its conjugate, then pick the smallest |trace|."""
        eps = self.fundamental_unit().eps
        log_eps = _log_abs(eps)
        k = round((_log_abs(gamma.conj()) - _log_abs(gamma)) / (2 * log_eps))
        if k:
            gamma = gamma * eps**k
        cands = [gamma * eps.inverse(), gamma, gamma * eps]
        best = min(cands, key=lambda z: (abs(z.trace()), -abs(z.y)))
        if best.x < 0 or (best.x == 0 and best.y < 0):
            best = -best
        return best

    # -- pseudo-units and S-units ------------------------------------------

    def pseudo_units(self) -> list[QuadElement]:
        G, _ = self.class_group()
        out = []
        for gen, order in zip(three_part(G).generators, G.p_part(3).invariants):
            rep = prime_to_3_rep(_reduce_ideal(self, gen))
            out.append(self.principal_generator(rep**order))
        return out

    def pstar(self) -> QuadIdeal:
        sp = factor_rational_prime(self.F, 3)
        if sp.type != "split":
            raise ValueError("3 does not split in the mirror field")
        return sp.primes[0]

    def class_order(self, I: QuadIdeal) -> int:
        G, _ = self.class_group()
        vec = self.dlog(I)
        order = 1
        for x, d in zip(vec, G.invariants):
            o = d // gcd(x, d)
            order = order * o // gcd(order, o)
        return order

    def s_unit(self) -> "SUnitData":
        p = self.pstar()
        ordp = self.class_order(p)
        eta = self.principal_generator(p**ordp)
        G, _ = self.class_group()
        Y = self.dlog(p)
        in_cubes = all(y % 3 == 0 for y, d in zip(Y, G.invariants) if d % 3 == 0)
        return SUnitData(p, ordp, eta, in_cubes)

    def s_unit_norm_one(self) -> QuadElement:
        eta = self.s_unit().eta
        return eta * eta.norm()

    def w_pstar(self) -> QuadElement:
        """Gamma*N(Gamma), Gamma generating p* times prod g_i^(-Y_i)."""
        G, _ = self.class_group()
        p = self.pstar()
        Y = self.dlog(p)
        if not all(y % 3 == 0 for y, d in zip(Y, G.invariants) if d % 3 == 0):
            raise ValueError("cl(p*) is not a cube: not the special split case")
        # make every Y_i a multiple of 3 so that prod g_i^Y_i is a cube ideal;
        # on factors of order prime to 3 this just adds a multiple of d_i
        Y = list(Y)
        for i, d in enumerate(G.invariants):
            while Y[i] % 3:
                Y[i] += d
        # p * prod conj(g_i)^Y_i = Gamma * prod N(g_i)^Y_i
        I = p
        denom = 1
        for y, g in zip(Y, G.generators):
            if y:
                I = I * g.conj() ** y
                denom *= g.norm() ** y
        content, J = I.primitive()
        gamma = self.principal_generator(J, normalize=False) * content / denom
        # a rational factor r changes Gamma*N(Gamma) by r^3 only
        den = gamma.denominator()
        gamma = self.normalize_mod_units(gamma * den)
        return gamma * gamma.norm()


@dataclass(frozen=True)
class SUnitData:
    pstar: QuadIdeal
    ord_pstar: int
    eta: QuadElement
    cl_in_cubes: bool


def _reduce_ideal(R: RealField, I: QuadIdeal) -> QuadIdeal:
    """Replace I by the reduced ideal of its class (keeps numbers small)."""
    _, ab = ideal_to_ab(I)
    red, _ = R.reduce(*ab, track=False)
    return ab_to_ideal(R.F, red)


def _bits(z: QuadElement) -> int:
    return max(z.x.numerator.bit_length(), z.y.numerator.bit_length(),
               z.x.denominator.bit_length(), z.y.denominator.bit_length())


def _log_abs(z: QuadElement) -> float:
    """log |x + y sqrt d| computed without cancellation."""
    x, y, d = z.x, z.y, z.F.d
    if x == 0 or y == 0 or (x > 0) == (y > 0):
        return _log_sum_same_sign(abs(x), abs(y), d)
    # opposite signs: |z| = |N(z)| / |conj(z)|
    nrm = abs(z.norm())
    return _log_frac(nrm) - _log_sum_same_sign(abs(x), abs(y), d)


def _log_frac(q: Fraction) -> float:
    from math import log
    return log(q.numerator) - log(q.denominator)


def _log_sum_same_sign(x: Fraction, y: Fraction, d: int) -> float:
    bits = max(x.numerator.bit_length(), y.numerator.bit_length(), 64)
    ctx = decimal.Context(prec=bits // 3 + 30)
    val = ctx.add(ctx.divide(decimal.Decimal(x.numerator), decimal.Decimal(x.denominator)),
                  ctx.multiply(ctx.divide(decimal.Decimal(y.numerator), decimal.Decimal(y.denominator)),
                               ctx.sqrt(decimal.Decimal(d))))
    return float(ctx.ln(val))


def _normalize_gt_one(eps: QuadElement) -> QuadElement:
    for cand in (eps, -eps, eps.inverse(), -eps.inverse()):
        if (cand - 1).real_sign() > 0:
            return cand
    raise RuntimeError("unit equal to +-1")


@lru_cache(maxsize=256)
def _cached(radicand: int, bound: int) -> RealField:
    return RealField(QuadField(radicand, "real"), bound)


def real_field(F: QuadField, bound: int = DESK_BOUND) -> RealField:
    return _cached(F.m, bound)


def fundamental_unit(F: QuadField) -> UnitData:
    return real_field(F).fundamental_unit()


def class_group_real(F: QuadField) -> tuple[AbGroup, ClassData]:
    return real_field(F).class_group()


def principal_generator_real(F: QuadField, I: QuadIdeal) -> QuadElement:
    return real_field(F).principal_generator(I)


def pseudo_units(F: QuadField) -> list[QuadElement]:
    return real_field(F).pseudo_units()
