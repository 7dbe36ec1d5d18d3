"""The 3-adic minus-log test on the sqrt(-m) coordinate of log(beta)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import log

from . import kernels
from .quadfield import QuadElement, QuadField, kronecker_symbol

INF = float("inf")


def v3(q) -> float:
    """3-adic valuation of a rational; +inf for 0."""
    q = Fraction(q)
    if q == 0:
        return INF
    v = 0
    num, den = q.numerator, q.denominator
    while num % 3 == 0:
        num //= 3
        v += 1
    while den % 3 == 0:
        den //= 3
        v -= 1
    return v


@dataclass(frozen=True)
class MinusLog:
    C1: Fraction | None  # None in the modular fast path
    v3C1: float  # capped at cap when C1 is only known modulo 3^cap
    trunc_t: int
    e0: int
    dres: int
    cap: float = INF


def log_params(m: int) -> tuple[int, int]:
    """(e0, dres) as in the programs."""
    e0 = 2 if m % 3 == 0 else 1
    dres = 2 if kronecker_symbol(-m, 3) == -1 else 1
    return e0, dres


def program_cutoff(e0: int, val: int) -> int:
    """Last t summed by the loop 'while(t<=e0*(Val+log(t)+1), t=t+1; ...)'."""
    t = 1
    while t <= e0 * (val + log(t) + 1):
        t += 1
    return t


def _delta_valuation(m: int, u0, u1) -> tuple[str, int]:
    """Valuation data of delta = u0 + u1*sqrt(-m) at 3.

    Unramified: min v3 of the coordinates. Ramified: the valuation at the
    prime above 3, where sqrt(-m) is a uniformizer.
    """
    if m % 3:
        return "unram", min(v3(u0), v3(u1))
    return "ram", min(2 * v3(u0), 2 * v3(u1) + 1)


def certified_cutoff(kind: str, v, val: int) -> int:
    """Smallest T such that every term t > T has v3(sqrt(-m)-coordinate) >= val + 1."""
    if v == INF:
        return 1

    def lower(t):
        # lower bound for v3 of the sqrt(-m) coordinate of delta^t / t
        if kind == "unram":
            return t * v - _v3int(t)
        return -(-(t * v - 1) // 2) - _v3int(t)

    def smooth(t):
        # real lower bound for lower(); increasing in t >= 2 since v >= 1
        if kind == "unram":
            return t * v - log(t) / log(3)
        return (t * v - 1) / 2 - log(t) / log(3)

    t = 2
    while not (smooth(t) >= val + 1 and lower(t) >= val + 1):
        t += 1
    return t - 1


def _v3int(n: int) -> int:
    v = 0
    while n % 3 == 0:
        n //= 3
        v += 1
    return v


def _gamma(beta: QuadElement, dres: int) -> QuadElement:
    return beta ** (3**dres - 1)


def minus_log_exact(beta: QuadElement, val: int, extra_terms: int = 0) -> MinusLog:
    """Reference path: exact rational series, program cutoff wrapped in the certified tail."""
    F = beta.F
    m = F.m
    e0, dres = log_params(m)
    gamma = _gamma(beta, dres)
    delta = gamma - 1
    if delta == 0:
        return MinusLog(Fraction(0), INF, 0, e0, dres)
    _check_one_unit(m, delta)
    kind, v = _delta_valuation(m, delta.x, delta.y)
    T = max(program_cutoff(e0, val), certified_cutoff(kind, v, val)) + extra_terms
    C1 = Fraction(0)
    power = QuadElement(F, 1)
    for t in range(1, T + 1):
        power = power * delta
        term = power.y / t
        C1 += term if t % 2 else -term
    return MinusLog(C1, v3(C1), T, e0, dres)


def minus_log_test(beta: QuadElement, val: int, exact: bool = False,
                   extra_terms: int = 0) -> tuple[bool, MinusLog]:
    """pass iff v3(C1) > Val (strict)."""
    if exact:
        rec = minus_log_exact(beta, val, extra_terms)
        return rec.v3C1 > val, rec
    return minus_log_fast(beta, val, extra_terms)


def _check_one_unit(m: int, delta: QuadElement) -> None:
    u0, u1 = _mod3_coords(delta, 3)
    if m % 3:
        if u0 % 3 or u1 % 3:
            raise ValueError("gamma - 1 is not divisible by 3: beta not prime to 3?")
    elif u0 % 3:
        raise ValueError("gamma - 1 is not in the prime above 3: beta not prime to 3?")


def _mod3_coords(z: QuadElement, modulus: int) -> tuple[int, int]:
    """Coordinates of a 3-integral element modulo the given power of 3."""
    x, y = z.x, z.y
    return (x.numerator * pow(x.denominator, -1, modulus) % modulus,
            y.numerator * pow(y.denominator, -1, modulus) % modulus)


def minus_log_fast(beta: QuadElement, val: int, extra_terms: int = 0) -> tuple[bool, MinusLog]:
    """Same verdict as the exact path, computed modulo a power of 3.

    beta is reduced modulo 3^P before powering; the series is then summed
    with the compiled kernel. C1 is obtained modulo 3^(val+1), which is
    exactly what the pass test needs.
    """
    m = beta.F.m
    e0, dres = log_params(m)
    T0 = program_cutoff(e0, val)
    # enough precision for any cutoff we may need: the certified tail only
    # depends on v(delta), found from a low-precision pass
    precision = val + 1
    s_max = 0
    while 3 ** (s_max + 1) <= 4 * T0 + 64:
        s_max += 1
    P = precision + s_max + 4
    M = 3**P
    x, y = _mod3_coords(beta, M)
    gx, gy = _power_mod(x, y, m, 3**dres - 1, M)
    u0, u1 = (gx - 1) % M, gy % M
    if u0 == 0 and u1 == 0:
        return True, MinusLog(None, precision, 0, e0, dres, cap=precision)
    if m % 3:
        if u0 % 3 or u1 % 3:
            raise ValueError("gamma - 1 is not divisible by 3: beta not prime to 3?")
        kind, v = "unram", min(_v3int(u0) if u0 else P, _v3int(u1) if u1 else P)
    else:
        if u0 % 3:
            raise ValueError("gamma - 1 is not in the prime above 3: beta not prime to 3?")
        kind = "ram"
        v = min(2 * _v3int(u0) if u0 else 2 * P, 2 * _v3int(u1) + 1 if u1 else 2 * P)
    T = max(T0, certified_cutoff(kind, v, val)) + extra_terms
    while 3 ** (s_max + 1) <= T:
        s_max += 1
        P = precision + s_max + 4
        M = 3**P
        x, y = _mod3_coords(beta, M)
        gx, gy = _power_mod(x, y, m, 3**dres - 1, M)
        u0, u1 = (gx - 1) % M, gy % M
    c1 = kernels.minus_log_mod(u0, u1, m, T, precision)
    vc = _v3int(c1) if c1 else precision
    return vc > val, MinusLog(None, min(vc, precision), T, e0, dres, cap=precision)


def _power_mod(x: int, y: int, m: int, e: int, M: int) -> tuple[int, int]:
    rx, ry = 1, 0
    while e:
        if e & 1:
            rx, ry = (rx * x - m * ry * y) % M, (rx * y + ry * x) % M
        e >>= 1
        if e:
            x, y = (x * x - m * y * y) % M, (2 * x * y) % M
    return rx, ry


def log_series_C1(F: QuadField, delta: QuadElement, T: int) -> Fraction:
    """sqrt(-m)-coefficient of sum_{t<=T} (-1)^(t+1) delta^t / t, exact."""
    C1 = Fraction(0)
    power = QuadElement(F, 1)
    for t in range(1, T + 1):
        power = power * delta
        C1 += power.y / t if t % 2 else -power.y / t
    return C1
