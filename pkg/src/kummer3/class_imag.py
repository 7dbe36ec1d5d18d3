"""Class groups of imaginary quadratic fields via reduced binary quadratic forms."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import kernels
from .abgroup import AbGroup, build_structure, v_p
from .quadfield import NotPrincipal, QuadElement, QuadField, QuadIdeal, _xgcd

DESK_BOUND = 10**9


class BoundExceeded(Exception):
    def __init__(self, what: str, value: int, bound: int):
        super().__init__(f"{what} {value} exceeds the configured bound {bound}")
        self.bound = bound


@dataclass(frozen=True)
class ClassData:
    h: int
    h3: int
    Exp: int
    hta: int
    rk3: int


def reduce_form(a: int, b: int, c: int) -> tuple[int, int, int]:
    """Reduce a positive definite form: -a < b <= a <= c, b >= 0 if a == c."""
    while True:
        if b > a or b <= -a:
            k = (a - b) // (2 * a)
            c = c + k * (b + a * k)
            b = b + 2 * a * k
        if a > c:
            a, b, c = c, -b, a
            continue
        break
    if a == c and b < 0:
        b = -b
    return a, b, c


def compose(f1, f2, D: int) -> tuple[int, int, int]:
    """Gauss composition of two primitive forms of discriminant D, reduced."""
    a1, b1, c1 = f1
    a2, b2, c2 = f2
    if a1 > a2:
        a1, b1, c1, a2, b2, c2 = a2, b2, c2, a1, b1, c1
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        d, u, _ = _xgcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, x2, y2 = _xgcd(s, d)
        y2 = -y2
    v1, v2 = a1 // d1, a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (b3 * b3 - D) // (4 * a3)
    return reduce_form(a3, b3, c3)


def form_power(f, e: int, D: int):
    result = identity_form(D)
    base = f
    while e:
        if e & 1:
            result = compose(result, base, D)
        e >>= 1
        if e:
            base = compose(base, base, D)
    return result


def identity_form(D: int):
    b = D & 1
    return (1, b, (b - D) // 4)


def ideal_to_form(I: QuadIdeal):
    F = I.F
    _, J = I.primitive()
    b = 2 * J.b + F.t
    return reduce_form(J.a, b, (b * b - F.D) // (4 * J.a))


def form_to_ideal(F: QuadField, f) -> QuadIdeal:
    a, b, _ = f
    return QuadIdeal(F, a, ((b - F.t) // 2) % a, 1)


def _ideal_vectors(I: QuadIdeal):
    return (I.a, 0), (I.b, I.c)


def lattice_shortest(F: QuadField, I: QuadIdeal) -> tuple[int, int]:
    """Shortest nonzero vector of I under the (definite) norm form, omega-coordinates."""
    t, n = F.t, F.n

    def nrm(u, v):
        return u * u + t * u * v + n * v * v

    def bil(p, q):  # twice the associated bilinear form
        return 2 * p[0] * q[0] + t * (p[0] * q[1] + p[1] * q[0]) + 2 * n * p[1] * q[1]

    p, q = _ideal_vectors(I)
    Np, Nq = nrm(*p), nrm(*q)
    if Nq < Np:
        p, q, Np, Nq = q, p, Nq, Np
    while True:
        # q <- q - mu p with mu = round(<p,q>/<p,p>)
        num = bil(p, q)
        mu = (num + Np) // (2 * Np)
        if mu:
            q = (q[0] - mu * p[0], q[1] - mu * p[1])
            Nq = nrm(*q)
        if Nq >= Np:
            return p
        p, q, Np, Nq = q, p, Nq, Np


def principal_generator(F: QuadField, I: QuadIdeal) -> QuadElement:
    """beta with (beta) = I, unique up to sign; x >= 0, ties y >= 0."""
    if F.is_real:
        raise ValueError("principal_generator handles imaginary fields; use class_real")
    u, v = lattice_shortest(F, I)
    beta = F.from_omega(u, v)
    if beta.norm() != I.norm():
        raise NotPrincipal(repr(I))
    if beta.x < 0 or (beta.x == 0 and beta.y < 0):
        beta = -beta
    return beta


def is_principal(I: QuadIdeal) -> bool:
    return ideal_to_form(I)[0] == 1


class ImagClassGroup:
    """Explicit class group of an imaginary quadratic field."""

    def __init__(self, F: QuadField, bound: int = DESK_BOUND):
        if F.is_real:
            raise ValueError("imaginary field expected")
        if -F.D > bound:
            raise BoundExceeded("|D|", -F.D, bound)
        self.F = F
        D = self.D = F.D
        forms = kernels.imag_reduced_forms(D)
        self.h = len(forms)
        keys = [(a, b) for a, b, _ in forms]
        ident = identity_form(D)[:2]

        def mul(x, y):
            f = compose(self._full(x), self._full(y), D)
            return f[:2]

        invariants, gens, table = build_structure(keys, mul, ident, self.h)
        self._table = table
        self.gen_forms = []
        for vec, basis in gens:
            f = identity_form(D)
            for e, g in zip(vec, basis):
                if e % self.h:
                    f = compose(f, form_power(self._full(g), e % self.h, D), D)
            self.gen_forms.append(f)
        self.group = AbGroup(
            invariants,
            [form_to_ideal(F, f) for f in self.gen_forms],
            self.dlog,
        )

    def _full(self, key):
        a, b = key
        return (a, b, (b * b - self.D) // (4 * a))

    def dlog(self, I) -> list[int]:
        f = I if isinstance(I, tuple) else ideal_to_form(I)
        return list(self._table[f[:2]])

    def class_data(self) -> ClassData:
        return class_data_from(self.group)


def class_data_from(G: AbGroup) -> ClassData:
    h = G.order
    h3 = 3 ** v_p(h, 3) if h else 1
    P = G.p_part(3)
    return ClassData(h=h, h3=h3, Exp=P.exponent, hta=h // h3, rk3=P.rank)


@lru_cache(maxsize=256)
def _cached(m: int, bound: int) -> ImagClassGroup:
    return ImagClassGroup(QuadField(m), bound)


def class_group(F: QuadField, bound: int = DESK_BOUND) -> tuple[AbGroup, ClassData]:
    cg = class_group_object(F, bound)
    return cg.group, cg.class_data()


def class_group_object(F: QuadField, bound: int = DESK_BOUND) -> ImagClassGroup:
    if F.is_real:
        raise ValueError("imaginary field expected")
    return _cached(F.m, bound)


def three_part(G: AbGroup) -> AbGroup:
    """Sylow 3-subgroup with generators raised to their prime-to-3 cofactors."""
    P = G.p_part(3)
    gens = []
    for j, i in enumerate(P.idx):
        if G.generators:
            g = G.generators[i]
            gens.append(g ** P.cofactors[j] if isinstance(g, QuadIdeal) else g)

    def dlog(x):
        return P.project(G.dlog(x))

    return AbGroup(P.invariants, gens, dlog if G.dlog else None)
