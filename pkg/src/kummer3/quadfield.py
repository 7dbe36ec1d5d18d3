"""Exact arithmetic in quadratic fields: elements, ideals in HNF, prime splitting."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from sympy.ntheory import sqrt_mod

IMAGINARY = "imaginary"
REAL = "real"


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    if n % 4 == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1 if p == 2 else 2
    return True


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for any integers a, n with n != 0."""
    if n == 0:
        raise ValueError("n must be nonzero")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = (n & -n).bit_length() - 1
    n >>= v
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class QuadField:
    """Q(sqrt(d)) for a squarefree d != 0, 1.

    ``m`` is |d| and ``sign`` says which of Q(sqrt(-m)), Q(sqrt(m)) we mean.
    The integral basis is {1, omega} with omega = (1+sqrt(d))/2 when
    D = 1 mod 4 and omega = sqrt(d) otherwise.
    """

    m: int
    sign: str = IMAGINARY
    d: int = field(init=False)
    D: int = field(init=False)
    t: int = field(init=False)  # omega^2 = t*omega - n
    n: int = field(init=False)

    def __post_init__(self):
        if self.sign not in (IMAGINARY, REAL):
            raise ValueError(f"bad sign {self.sign!r}")
        if not is_squarefree(self.m):
            raise ValueError(f"{self.m} is not squarefree")
        d = -self.m if self.sign == IMAGINARY else self.m
        if d == 1:
            raise ValueError("Q(sqrt(1)) is not a field")
        D = d if d % 4 == 1 else 4 * d
        t, n = (1, (1 - d) // 4) if d % 4 == 1 else (0, -d)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "n", n)

    @property
    def is_real(self) -> bool:
        return self.sign == REAL

    @property
    def split3(self) -> str:
        return {1: "split", -1: "inert", 0: "ramified"}[kronecker_symbol(self.D, 3)]

    @property
    def m_mod9(self) -> int:
        return self.m % 9

    @property
    def disc_printed(self) -> int:
        """|D|, the value the programs print as Disc."""
        return abs(self.D)

    def pol(self) -> str:
        return f"x^2{-self.d:+d}"

    def elt(self, x, y=0) -> "QuadElement":
        return QuadElement(self, Fraction(x), Fraction(y))

    def from_omega(self, u, v) -> "QuadElement":
        """The element u + v*omega."""
        if self.t:
            return QuadElement(self, Fraction(u) + Fraction(v, 2), Fraction(v, 2))
        return QuadElement(self, Fraction(u), Fraction(v))

    @property
    def omega(self) -> "QuadElement":
        return self.from_omega(0, 1)

    def unit_ideal(self) -> "QuadIdeal":
        return QuadIdeal(self, 1, 0, 1)

    def __repr__(self):
        return f"QuadField({self.d})"


def make_pair(m: int) -> tuple[QuadField, QuadField]:
    """The imaginary field Q(sqrt(-m)) and its mirror Q(sqrt(3m))."""
    if m < 2 or not is_squarefree(m):
        raise ValueError(f"m={m} must be squarefree and at least 2")
    radicand = m // 3 if m % 3 == 0 else 3 * m
    return QuadField(m, IMAGINARY), QuadField(radicand, REAL)


class QuadElement:
    """x + y*sqrt(d) with rational x, y."""

    __slots__ = ("F", "x", "y")

    def __init__(self, F: QuadField, x, y=0):
        self.F = F
        self.x = x if isinstance(x, Fraction) else Fraction(x)
        self.y = y if isinstance(y, Fraction) else Fraction(y)

    def _coerce(self, other):
        if isinstance(other, QuadElement):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElement(self.F, other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadElement(self.F, self.x + other.x, self.y + other.y)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(self.F, -self.x, -self.y)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadElement(self.F, self.x - other.x, self.y - other.y)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        return QuadElement(self.F, x1 * x2 + self.F.d * y1 * y2, x1 * y2 + x2 * y1)

    __rmul__ = __mul__

    def inverse(self):
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadElement(self.F, self.x / nrm, -self.y / nrm)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = QuadElement(self.F, 1, 0)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.F.d == other.F.d and self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.F.d, self.x, self.y))

    def __bool__(self):
        return bool(self.x) or bool(self.y)

    def conj(self):
        return QuadElement(self.F, self.x, -self.y)

    def norm(self) -> Fraction:
        return self.x * self.x - self.F.d * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    def omega_coords(self) -> tuple[Fraction, Fraction]:
        """(u, v) with self = u + v*omega."""
        if self.F.t:
            return self.x - self.y, 2 * self.y
        return self.x, self.y

    def is_integral(self) -> bool:
        u, v = self.omega_coords()
        return u.denominator == 1 and v.denominator == 1

    def denominator(self) -> int:
        u, v = self.omega_coords()
        return u.denominator * v.denominator // gcd(u.denominator, v.denominator)

    def is_rational(self) -> bool:
        return self.y == 0

    def real_sign(self) -> int:
        """Sign of x + y*sqrt(d) under sqrt(d) > 0 (real fields only)."""
        return _sign_of_sum(self.x, self.y, self.F.d)

    def real_approx(self) -> float:
        from math import sqrt
        return float(self.x) + float(self.y) * sqrt(self.F.d)

    def ideal(self) -> "QuadIdeal":
        """The principal ideal (self); self must be integral."""
        if not self.is_integral():
            raise ValueError("principal ideal of a non-integral element")
        w = self * self.F.omega
        u1, v1 = self.omega_coords()
        u2, v2 = w.omega_coords()
        return QuadIdeal.from_generators(self.F, [(int(u1), int(v1)), (int(u2), int(v2))])

    def pari_str(self) -> str:
        return f"Mod({_poly_str(self.y, self.x)}, x^2{-self.F.d:+d})"

    def __repr__(self):
        return f"({self.x}) + ({self.y})*sqrt({self.F.d})"


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _poly_str(a: Fraction, b: Fraction) -> str:
    """a*x + b in the programs' printing style."""
    if a == 0:
        return _frac_str(b)
    head = "x" if a == 1 else "-x" if a == -1 else f"{_frac_str(a)}*x"
    if b == 0:
        return head
    tail = _frac_str(b)
    return head + (tail if tail.startswith("-") else "+" + tail)


def _sign_of_sum(x: Fraction, y: Fraction, d: int) -> int:
    """Exact sign of x + y*sqrt(d), d > 0 not a square."""
    sx = (x > 0) - (x < 0)
    sy = (y > 0) - (y < 0)
    if sy == 0:
        return sx
    if sx == 0 or sx == sy:
        return sy
    # opposite signs: compare x^2 with d*y^2
    diff = x * x - d * y * y
    return sx if diff > 0 else sy


class NotPrincipal(Exception):
    """Raised when a principal generator is requested for a non-principal ideal."""


@dataclass(frozen=True)
class QuadIdeal:
    """Integral ideal Z*a + Z*(b + c*omega) in Hermite normal form.

    0 <= b < a, c | a and c | b; the norm is a*c.
    """

    F: QuadField
    a: int
    b: int
    c: int

    @staticmethod
    def from_generators(F: QuadField, vecs) -> "QuadIdeal":
        """HNF of the Z-module spanned by the (u, v) = u + v*omega vectors."""
        a, b, c = _hnf2([(int(u), int(v)) for u, v in vecs])
        return QuadIdeal(F, a, b, c)

    @staticmethod
    def two_elt(F: QuadField, a: int, beta: QuadElement) -> "QuadIdeal":
        """The ideal (a, beta)."""
        u, v = beta.omega_coords()
        w = beta * F.omega
        u2, v2 = w.omega_coords()
        return QuadIdeal.from_generators(F, [(a, 0), (0, a), (u, v), (u2, v2)])

    def norm(self) -> int:
        return self.a * self.c

    def content(self) -> int:
        return self.c

    def primitive(self) -> tuple[int, "QuadIdeal"]:
        """(c, J) with self = c*J and J primitive."""
        c = self.c
        return c, QuadIdeal(self.F, self.a // c, self.b // c, 1)

    def is_unit(self) -> bool:
        return self.a == 1 and self.c == 1

    def basis(self) -> tuple[QuadElement, QuadElement]:
        F = self.F
        return F.elt(self.a), F.from_omega(self.b, self.c)

    def __mul__(self, other: "QuadIdeal") -> "QuadIdeal":
        F = self.F
        if F.d != other.F.d:
            raise ValueError("ideals over different fields")
        t, n = F.t, F.n
        vecs = []
        for (u1, v1) in ((self.a, 0), (self.b, self.c)):
            for (u2, v2) in ((other.a, 0), (other.b, other.c)):
                # (u1 + v1 w)(u2 + v2 w), w^2 = t w - n
                vecs.append((u1 * u2 - v1 * v2 * n, u1 * v2 + u2 * v1 + v1 * v2 * t))
        return QuadIdeal.from_generators(F, vecs)

    def __pow__(self, e: int) -> "QuadIdeal":
        if e < 0:
            raise ValueError("negative powers of integral ideals are fractional")
        result = self.F.unit_ideal()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def conj(self) -> "QuadIdeal":
        # conj(omega) = t - omega
        t = self.F.t
        return QuadIdeal.from_generators(self.F, [(self.a, 0), (self.b + self.c * t, -self.c)])

    def scale(self, k: int) -> "QuadIdeal":
        return QuadIdeal(self.F, self.a * abs(k), self.b * abs(k), self.c * abs(k))

    def divide_by_integer(self, k: int) -> "QuadIdeal":
        k = abs(k)
        if self.a % k or self.b % k or self.c % k:
            raise ValueError(f"ideal not divisible by {k}")
        return QuadIdeal(self.F, self.a // k, self.b // k, self.c // k)

    def contains(self, elt: QuadElement) -> bool:
        if not elt.is_integral():
            return False
        u, v = (int(z) for z in elt.omega_coords())
        if v % self.c:
            return False
        u -= (v // self.c) * self.b
        return u % self.a == 0

    def __repr__(self):
        return f"QuadIdeal({self.F.d}; [{self.a}, {self.b}; 0, {self.c}])"


def _hnf2(vecs: list[tuple[int, int]]) -> tuple[int, int, int]:
    a = 0
    pu, pv = 0, 0
    for u, v in vecs:
        if v == 0:
            a = gcd(a, u)
            continue
        if pv == 0:
            pu, pv = u, v
            continue
        g, s, t = _xgcd(pv, v)
        nu, nv = s * pu + t * u, g
        # combination killing the omega-coordinate
        a = gcd(a, (v // g) * pu - (pv // g) * u)
        pu, pv = nu, nv
    if pv == 0 or a == 0:
        raise ValueError("module does not have full rank")
    if pv < 0:
        pu, pv = -pu, -pv
    return a, pu % a, pv


def ideal_product(ideals) -> QuadIdeal:
    ideals = list(ideals)
    result = ideals[0]
    for J in ideals[1:]:
        result = result * J
    return result


def _roots_mod_prime(F: QuadField, q: int) -> list[int]:
    """Roots of x^2 - t x + n modulo q."""
    t, n = F.t, F.n
    if q == 2:
        return [r for r in (0, 1) if (r * r - t * r + n) % 2 == 0]
    disc = (t * t - 4 * n) % q  # = D mod q
    inv2 = (q + 1) // 2
    if disc == 0:
        return [t * inv2 % q]
    s = sqrt_mod(disc, q)
    if s is None:
        return []
    return sorted({(t + s) * inv2 % q, (t - s) * inv2 % q})


@dataclass(frozen=True)
class Splitting:
    type: str
    primes: tuple


def factor_rational_prime(F: QuadField, q: int) -> Splitting:
    roots = _roots_mod_prime(F, q)
    if not roots:
        return Splitting("inert", (QuadIdeal(F, q, 0, q),))
    primes = tuple(QuadIdeal(F, q, (-r) % q, 1) for r in roots)
    return Splitting("split" if len(primes) == 2 else "ramified", primes)


def omega_root_lift(F: QuadField, r: int, q: int, e: int) -> int:
    """Hensel lift of a simple root r of x^2 - t x + n modulo q^e."""
    t, n = F.t, F.n
    mod = q
    while mod < q ** e:
        mod = min(mod * mod, q ** e)
        fr = r * r - t * r + n
        dfr = 2 * r - t
        r = (r - fr * pow(dfr, -1, mod)) % mod
    return r % q ** e


def split_prime_power(F: QuadField, q: int, r: int, e: int) -> QuadIdeal:
    """(q, omega - r)^e for a split prime q, via the Hensel lift of r."""
    if e == 0:
        return F.unit_ideal()
    qe = q ** e
    return QuadIdeal(F, qe, (-omega_root_lift(F, r, q, e)) % qe, 1)


def prime_to_3_rep(I: QuadIdeal, search: int = 40) -> QuadIdeal:
    """An integral ideal in the class of I with norm prime to 3."""
    if I.norm() % 3:
        return I
    Ib = I.conj()
    N = I.norm()
    e1, e2 = Ib.basis()
    for size in range(1, search):
        for x in range(-size, size + 1):
            for y in range(-size, size + 1):
                if max(abs(x), abs(y)) != size:
                    continue
                alpha = e1 * x + e2 * y
                if (abs(alpha.norm()) // N) % 3:
                    return (alpha.ideal() * I).divide_by_integer(N)
    raise RuntimeError("no representative prime to 3 found")
