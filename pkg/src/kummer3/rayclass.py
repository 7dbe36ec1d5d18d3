"""Ray class groups of k modulo 3^nu and the torsion group T_k."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .abgroup import AbGroup, Presented, v_p
from .class_imag import class_group_object, principal_generator
from .quadfield import QuadElement, QuadField, QuadIdeal, prime_to_3_rep

NU_MAX = 8


class RayClassInconsistency(Exception):
    pass


class _Ring:
    """O_k / 3^P in omega-coordinates (u, v) <-> u + v*omega, omega^2 = t*omega - n."""

    def __init__(self, F: QuadField, P: int):
        self.M = 3**P
        self.t, self.n = F.t, F.n

    def mul(self, x, y):
        (a, b), (c, d) = x, y
        bd = b * d
        return (a * c - self.n * bd) % self.M, (a * d + b * c + self.t * bd) % self.M

    def conj(self, x):
        u, v = x
        return (u + self.t * v) % self.M, -v % self.M

    def norm(self, x):
        u, v = x
        return (u * u + self.t * u * v + self.n * v * v) % self.M

    def inv(self, x):
        c = pow(self.norm(x), -1, self.M)
        u, v = self.conj(x)
        return u * c % self.M, v * c % self.M

    def pow(self, x, e: int):
        if e < 0:
            x, e = self.inv(x), -e
        r = (1, 0)
        while e:
            if e & 1:
                r = self.mul(r, x)
            e >>= 1
            if e:
                x = self.mul(x, x)
        return r

    def coords(self, z: QuadElement):
        """omega-coordinates of a 3-integral element, reduced."""
        u, v = z.omega_coords()
        return (u.numerator * pow(u.denominator, -1, self.M) % self.M,
                v.numerator * pow(v.denominator, -1, self.M) % self.M)


def _roots_mod3(F: QuadField) -> list[int]:
    return [r for r in range(3) if (r * r - F.t * r + F.n) % 3 == 0]


class UnitGroupMod3nu:
    """(O_k/3^nu)^* = (residue units) x (1-units), each part presented explicitly.

    The 1-units are filtered by U^i = 1 + pi^i O with pi = 3 (3 unramified)
    or pi = sqrt(-m) (3 ramified). Each layer U^i/U^(i+1) is spanned by
    1 + pi^i c for c in a basis of O/pi; cubing a generator lands in deeper
    layers, which gives a triangular relation matrix with 3 on the diagonal.
    """

    def __init__(self, F: QuadField, nu: int):
        if not 1 <= nu <= NU_MAX:
            raise ValueError(f"nu must be in 1..{NU_MAX}")
        self.F, self.nu = F, nu
        self.kind = F.split3
        # work modulo 3^(2nu): digits of the ramified filtration need it, and
        # every computation stays compatible with reduction modulo 3^nu
        R = self.R = _Ring(F, 2 * nu)
        self._setup_residue()
        self._setup_levels()
        self.order = self._expected_order()

        ncols = self.nres + len(self.u1_gens)
        rows = []
        for j, d in enumerate(self.res_invariants):
            rows.append([d if k == j else 0 for k in range(ncols)])
        for j, g in enumerate(self.u1_gens):
            vec = self._dlog_u1(R.pow(g, 3))
            row = [0] * self.nres + [-x for x in vec]
            row[self.nres + j] += 3
            rows.append(row)
        self.presented = Presented(rows, ncols)
        size = 1
        for d in self.presented.invariants:
            size *= d
        if size != self.order:
            raise RuntimeError(f"unit group order {size}, expected {self.order}")
        witnesses = self.res_gens + self.u1_gens
        gens = []
        for j in range(len(self.presented.invariants)):
            x = (1, 0)
            for e, g in zip(self.presented.lift(j), witnesses):
                if e:
                    x = R.mul(x, R.pow(g, e))
            gens.append((x[0] % 3**nu, x[1] % 3**nu))
        self.group = AbGroup(list(self.presented.invariants), gens, self.dlog)

    # -- pieces ------------------------------------------------------------

    def _expected_order(self) -> int:
        nu = self.nu
        if self.kind == "split":
            return (2 * 3 ** (nu - 1)) ** 2
        if self.kind == "inert":
            return 8 * 9 ** (nu - 1)
        return 2 * 3 ** (2 * nu - 1)

    def _teich(self, x):
        return self.R.pow(x, 9**self.nu)

    def _setup_residue(self):
        F = self.F
        roots = _roots_mod3(F)
        self.roots = roots
        if self.kind == "inert":
            self.res_e = 8
            self.res_invariants = [8]
            R3 = _Ring(F, 1)
            for u in range(3):
                for v in range(1, 3):
                    g = (u, v)
                    if R3.pow(g, 4) != (1, 0):
                        table, x = {}, (1, 0)
                        for k in range(8):
                            table[x] = k
                            x = R3.mul(x, g)
                        self._f9_table = table
                        self.res_gens = [self._teich(g)]
                        break
                else:
                    continue
                break
        else:
            self.res_e = 2
            self.res_invariants = [2] * len(roots)
            self.res_gens = []
            for k in range(len(roots)):
                want = [2 if i == k else 1 for i in range(len(roots))]
                g = next((u, v) for u in range(3) for v in range(3)
                         if [(u + v * r) % 3 for r in roots] == want)
                self.res_gens.append(self._teich(g))
        self.nres = len(self.res_invariants)

    def _residue_vec(self, x) -> list[int]:
        u, v = x
        if self.kind == "inert":
            return [self._f9_table[(u % 3, v % 3)]]
        out = []
        for r in self.roots:
            c = (u + v * r) % 3
            if c == 0:
                raise ValueError("element is not a unit modulo 3")
            out.append(1 if c == 2 else 0)
        return out

    def _setup_levels(self):
        F, R, nu = self.F, self.R, self.nu
        gens = []
        if self.kind == "ramified":
            self.pi = (0, 1) if F.t == 0 else (R.M - 1, 2)
            self.pibar = R.conj(self.pi)
            self.m_prime = F.m // 3
            for i in range(1, 2 * nu):
                p = R.pow(self.pi, i)
                gens.append(((1 + p[0]) % R.M, p[1]))
        else:
            for i in range(1, nu):
                q = 3**i
                gens.append((1 + q, 0))
                gens.append((1, q))
        self.u1_gens = gens
        self._u1_inv = [R.inv(g) for g in gens]

    def _dlog_u1(self, x) -> list[int]:
        """Exponent vector of a 1-unit on u1_gens (successive digits)."""
        R = self.R
        out = []
        if self.kind == "ramified":
            for i in range(1, 2 * self.nu):
                w = ((x[0] - 1) % R.M, x[1])
                z = R.mul(w, R.pow(self.pibar, i))
                q = 3**i
                if z[0] % q or z[1] % q:
                    raise ValueError("element is not in the expected filtration layer")
                zu, zv = z[0] // q, z[1] // q
                # z/3^i = c * m'^i (mod pi), with pi-residue u + v*r
                c = (zu + zv * self.roots[0]) * pow(self.m_prime**i, -1, 3) % 3
                out.append(c)
                if c:
                    x = R.mul(x, R.pow(self._u1_inv[i - 1], c))
            return out
        for i in range(1, self.nu):
            q = 3**i
            a, b = (x[0] - 1) % R.M, x[1]
            if a % q or b % q:
                raise ValueError("element is not in the expected filtration layer")
            a, b = a // q % 3, b // q % 3
            out += [a, b]
            j = 2 * (i - 1)
            if a:
                x = R.mul(x, R.pow(self._u1_inv[j], a))
            if b:
                x = R.mul(x, R.pow(self._u1_inv[j + 1], b))
        return out

    # -- public ------------------------------------------------------------

    def dlog(self, x) -> list[int]:
        """Smith coordinates of a unit given as omega-coordinates or an element."""
        R = self.R
        if isinstance(x, QuadElement):
            x = R.coords(x)
        x = (x[0] % R.M, x[1] % R.M)
        res = self._residue_vec(x)
        e = self.res_e
        inv_e = pow(e, -1, R.M)
        u1 = [c * inv_e for c in self._dlog_u1(R.pow(x, e))]
        return self.presented.reduce(res + u1)


def unit_group_mod3nu(F: QuadField, nu: int) -> AbGroup:
    return _unit_group(F.m, nu).group


@lru_cache(maxsize=128)
def _unit_group(m: int, nu: int) -> UnitGroupMod3nu:
    return UnitGroupMod3nu(QuadField(m), nu)


@dataclass
class RayClassGroup:
    nu: int
    invariants: list[int]  # 3-part, descending: [3^z_ac, 3^z_c, 3^t1, ...]
    group: AbGroup  # full structure, dlog on ideals prime to 3


class _RayClass:
    def __init__(self, F: QuadField, nu: int):
        self.F, self.nu = F, nu
        U = self.U = _unit_group(F.m, nu)
        cg = class_group_object(F)
        G = cg.group
        self.cg = cg
        r = len(U.group.invariants)
        s = len(G.invariants)
        ncols = r + s
        rows = []
        for j, d in enumerate(U.group.invariants):
            rows.append([d if k == j else 0 for k in range(ncols)])
        roots_of_unity = [F.elt(-1)]
        if F.D == -3:
            roots_of_unity.append(F.omega)
        for z in roots_of_unity:
            rows.append(U.dlog(z) + [0] * s)
        self.reps = []
        for i, (g, n) in enumerate(zip(G.generators, G.invariants)):
            rep = prime_to_3_rep(g)
            alpha = principal_generator(F, rep**n)
            self.reps.append(rep)
            row = [-x for x in U.dlog(alpha)] + [0] * s
            row[r + i] += n
            rows.append(row)
        self.r, self.s = r, s
        self.presented = Presented(rows, ncols)
        self.group = AbGroup(list(self.presented.invariants), [], self.dlog)

    def dlog(self, b: QuadIdeal) -> list[int]:
        """Ray class of an integral ideal prime to 3, in Smith coordinates."""
        if b.norm() % 3 == 0:
            raise ValueError("ideal is not prime to 3")
        G = self.cg.group
        k = self.cg.dlog(b)
        J = b
        comp = []
        for rep, n, ki in zip(self.reps, G.invariants, k):
            c = (-ki) % n
            comp.append(c)
            if c:
                J = J * rep**c
        beta = principal_generator(self.F, J)
        vec = self.U.dlog(beta) + [-c for c in comp]
        return self.presented.reduce(vec)


@lru_cache(maxsize=128)
def _ray(m: int, nu: int) -> _RayClass:
    return _RayClass(QuadField(m), nu)


def ray_class_group(F: QuadField, nu: int) -> RayClassGroup:
    if F.is_real:
        raise ValueError("imaginary field expected")
    R = _ray(F.m, nu)
    three = sorted((3 ** v_p(d, 3) for d in R.group.invariants if d % 3 == 0), reverse=True)
    return RayClassGroup(nu, three, R.group)


def expected_order_v3(F: QuadField, nu: int) -> int:
    """v3(#H_k(3^nu)) from #H = h * phi(3^nu) / [O^* : O^* cap (1 + 3^nu O)]."""
    h = class_group_object(F).h
    v = v_p(h, 3) + 2 * (nu - 1) + (1 if F.m % 3 == 0 else 0)
    if F.D == -3:
        v -= 1  # the cube roots of unity inject into (O/3^nu)^*
    return v


@dataclass(frozen=True)
class TorsionData:
    T_k: list[int]
    ot: int
    W_bp_order: int
    otbp: int
    Val: int
    ram_status: str
    disjunction_index: int
    nu: int
    h3: int
    Exp: int


def torsion_nu(F: QuadField) -> int:
    Exp = class_group_object(F).class_data().Exp
    return v_p(Exp, 3) + 2


def t_k(F: QuadField) -> TorsionData:
    if F.D == -3:
        raise ValueError("m = 3 has no mirror field")
    data = class_group_object(F).class_data()
    nu = v_p(data.Exp, 3) + 2
    if nu > NU_MAX:
        raise ValueError(f"nu = {nu} exceeds the cap {NU_MAX}")
    H = ray_class_group(F, nu)
    inv = H.invariants
    if len(inv) < 2 or inv[1] != 3 ** (nu - 1):
        raise RayClassInconsistency(
            f"m={F.m}: 3-part {inv} of H_k(3^{nu}) has z_c != nu - 1")
    T = inv[2:]
    ot = 1
    for d in T:
        ot *= d
    W = 3 if F.m % 9 == 3 else 1
    otbp = ot // W
    eps = 1 if F.m % 3 == 0 else 0
    val = v_p(data.Exp, 3) + v_p(otbp, 3) - v_p(data.h3, 3) + 2 - eps
    return TorsionData(
        T_k=T,
        ot=ot,
        W_bp_order=W,
        otbp=otbp,
        Val=val,
        ram_status="Ramified" if data.h3 == otbp else "Unramified",
        disjunction_index=Fraction(data.h3, otbp),
        nu=nu,
        h3=data.h3,
        Exp=data.Exp,
    )


def rank_stabilization_check(F: QuadField, nus=(2, 3, 4)) -> bool:
    """rk3 H_k(3^nu) constant over nus, non-decreasing from nu = 1, equal to 2 + rk3 T_k."""
    ranks = [len(ray_class_group(F, nu).invariants) for nu in range(1, max(nus) + 1)]
    if any(a > b for a, b in zip(ranks, ranks[1:])):
        return False
    stable = {ranks[nu - 1] for nu in nus}
    if len(stable) != 1:
        return False
    return stable.pop() == 2 + len(t_k(F).T_k)
