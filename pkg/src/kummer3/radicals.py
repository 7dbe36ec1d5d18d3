"""Case classification, the radical basis of W_{k*}, and the cubic polynomials of radicals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from sympy import Poly, integer_nthroot, symbols

from .class_real import real_field
from .padlog import v3
from .quadfield import QuadElement, QuadField, is_squarefree, make_pair
from .rayclass import t_k

NON_SPLIT = "NonSplit"
NORMAL_SPLIT = "NormalSplit"
SPECIAL_SPLIT = "SpecialSplit"
TRIVIAL = "Trivial"

# program label printed by the case selector for each tag
PROGRAM_LABEL = {NON_SPLIT: "P I", NORMAL_SPLIT: "P II", SPECIAL_SPLIT: "P III", TRIVIAL: "P IV"}


class CaseInconsistency(Exception):
    pass


@dataclass(frozen=True)
class CaseTag:
    tag: str
    rho_Sstar: int | None  # None where 3 does not split in k*
    m: int
    hstar: int
    rkstar: int
    rt: int  # rk3(T_k)

    @property
    def program(self) -> str:
        return PROGRAM_LABEL[self.tag]


def classify(m: int) -> CaseTag:
    k, kstar = make_pair(m)
    Rs = real_field(kstar)
    Gs, cds = Rs.class_group()
    rkstar = cds.rk3
    rt = len(t_k(k).T_k)
    split = m % 9 == 3
    if cds.h3 == 1:
        return CaseTag(TRIVIAL, 0 if split else None, m, cds.h, rkstar, rt)
    if not split:
        return CaseTag(NON_SPLIT, None, m, cds.h, rkstar, rt)
    # cross-check the rank criterion against cl(p*) in H_{k*}^3
    in_cubes = Rs.s_unit().cl_in_cubes
    if rt == rkstar and not in_cubes:
        return CaseTag(NORMAL_SPLIT, 1, m, cds.h, rkstar, rt)
    if rt == rkstar + 1 and in_cubes:
        return CaseTag(SPECIAL_SPLIT, 0, m, cds.h, rkstar, rt)
    raise CaseInconsistency(
        f"m={m}: rk3(T_k)={rt}, rk3(H_k*)={rkstar}, cl(p*) in cubes: {in_cubes}")


# -- radicals ------------------------------------------------------------------


@dataclass(frozen=True)
class BasisElement:
    name: str
    w: QuadElement


@dataclass(frozen=True)
class Radical:
    w: QuadElement
    provenance: tuple  # ((name, exponent), ...)
    digits: tuple
    index: int  # 1-based position in the enumeration (the programs' J)


def radical_basis(case: CaseTag) -> list[BasisElement]:
    """Lw0 in the order used by the programs."""
    _, kstar = make_pair(case.m)
    R = real_field(kstar)
    eps = R.fundamental_unit().eps
    alphas = [BasisElement(f"alpha_{i + 1}", a) for i, a in enumerate(R.pseudo_units())]
    if case.tag in (NON_SPLIT, NORMAL_SPLIT):
        return [BasisElement("eps", eps)] + alphas
    if case.tag == SPECIAL_SPLIT:
        return [BasisElement("w_pstar", R.w_pstar()), BasisElement("eps", eps)] + alphas
    if case.m % 9 == 3:
        return [BasisElement("eps", eps), BasisElement("eta", R.s_unit_norm_one())]
    return [BasisElement("eps", eps)]


def _digits3(i: int) -> list[int]:
    out = []
    while i:
        out.append(i % 3)
        i //= 3
    return out[::-1]


def enumerate_radicals(basis: list[BasisElement]) -> list[Radical]:
    """One radical per cyclic subgroup of order 3 of <basis> modulo cubes.

    Digit vectors of 1 .. 3^N - 1 with leading digit 1, aligned to the end
    of the basis list, exactly as the programs build Lw.
    """
    N = len(basis)
    if N < 1:
        raise ValueError("empty radical basis")
    out = []
    for i in range(1, 3**N):
        D = _digits3(i)
        if D[0] == 2:
            continue
        d0 = N - len(D)
        w = None
        prov = []
        for j, e in enumerate(D):
            if e:
                b = basis[d0 + j]
                w = b.w**e if w is None else w * b.w**e
                prov.append((b.name, e))
        out.append(Radical(w, tuple(prov), tuple([0] * d0 + D), len(out) + 1))
    assert len(out) == (3**N - 1) // 2
    return out


# -- cubic polynomials ------------------------------------------------------------


@dataclass
class CubicCandidate:
    a: int
    t: Fraction
    coeffs: tuple  # (c2, c1, c0): x^3 + c2 x^2 + c1 x + c0, integral
    scale: int  # x -> x/scale applied to clear a half-integral trace
    polydisc: int
    fld_disc_v3: int
    normalized: bool = False  # w was replaced by w*N(w) to make the norm a cube
    eliminated_by: int | None = None

    def pari(self) -> str:
        return poly_str(self.coeffs)


def poly_str(coeffs) -> str:
    c2, c1, c0 = coeffs
    s = "x^3"
    for c, mono in ((c2, "*x^2"), (c1, "*x"), (c0, "")):
        if c:
            sign = "+" if c > 0 else "-"
            mag = abs(c)
            if mono and mag == 1:
                s += f"{sign}{mono[1:]}"
            else:
                s += f"{sign}{mag}{mono}"
    return s


def cubic_disc(coeffs) -> int:
    c2, c1, c0 = coeffs
    return (c2 * c2 * c1 * c1 - 4 * c1**3 - 4 * c2**3 * c0 - 27 * c0 * c0
            + 18 * c2 * c1 * c0)


def integer_cube_root(n: Fraction) -> int | None:
    if Fraction(n).denominator != 1:
        return None
    n = int(n)
    r, exact = integer_nthroot(abs(n), 3)
    if not exact:
        return None
    return r if n >= 0 else -r


def cubic_candidate(w: QuadElement) -> CubicCandidate:
    """Q = x^3 - 3a x - t with a^3 = N(w), t = Tr(w)."""
    normalized = False
    a = integer_cube_root(w.norm())
    if a is None:
        w = w * w.norm()
        normalized = True
        a = integer_cube_root(w.norm())
        if a is None:
            raise ValueError("norm of the radical is not a cube of an integer")
    t = w.trace()
    if t.denominator == 1:
        coeffs, scale = (0, -3 * a, -int(t)), 1
    elif t.denominator == 2:
        # y = 2x: y^3 - 12a y - 8t
        coeffs, scale = (0, -12 * a, -int(8 * t)), 2
    else:
        raise ValueError("trace of the radical is not half-integral")
    irreducible_or_raise(coeffs)
    return CubicCandidate(
        a=a,
        t=t,
        coeffs=coeffs,
        scale=scale,
        polydisc=cubic_disc(coeffs),
        fld_disc_v3=field_disc_3val(coeffs),
        normalized=normalized,
    )


_X = symbols("x")


def is_irreducible(coeffs) -> bool:
    return Poly([1, *coeffs], _X).is_irreducible


def irreducible_or_raise(coeffs) -> None:
    if not is_irreducible(coeffs):
        raise ValueError(f"{poly_str(coeffs)} is reducible")


@dataclass(frozen=True)
class NonGaloisPair:
    a: int
    t: QuadElement  # in k
    t_prime: QuadElement

    def polys(self):
        """Coefficient lists [1, 0, -3a, -t] over k for Q and Q'."""
        return ([1, 0, -3 * self.a, -self.t], [1, 0, -3 * self.a, -self.t_prime])


def cubic_candidates_nongalois(w: QuadElement) -> NonGaloisPair:
    """First layers of the two conjugate non-Galois Z3-extensions from the radical w."""
    Fstar = w.F
    if not Fstar.is_real:
        raise ValueError("radical must lie in the mirror field")
    a = integer_cube_root(w.norm())
    if a is None:
        raise ValueError("norm of the radical is not a cube")
    # recover m from the mirror radicand: 3m, or m/3 when 3 | m
    r = Fstar.m
    m = r // 3 if r % 3 == 0 else 3 * r
    k = QuadField(m)
    u, v = 2 * w.x, 2 * w.y
    c = 3 * v if m % 3 else v
    t = QuadElement(k, -u / 2, -c / 2)
    return NonGaloisPair(a, t, t.conj())


# -- 3-adic valuation of the field discriminant -------------------------------------


def _mulmat(z, coeffs):
    """Matrix (rows = images of 1, theta, theta^2) of multiplication by z."""
    c2, c1, c0 = coeffs

    def times_theta(p):
        a0, a1, a2 = p
        # theta^3 = -c2 theta^2 - c1 theta - c0
        return (-c0 * a2, a0 - c1 * a2, a1 - c2 * a2)

    rows = [tuple(z)]
    rows.append(times_theta(rows[0]))
    rows.append(times_theta(rows[1]))
    return rows


def _char_poly_integral(z, coeffs) -> bool:
    M = _mulmat(z, coeffs)
    tr = M[0][0] + M[1][1] + M[2][2]
    tr2 = sum(M[i][j] * M[j][i] for i in range(3) for j in range(3))
    s2 = (tr * tr - tr2) / 2
    det = (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
           - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
           + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))
    return all(Fraction(x).denominator == 1 for x in (tr, s2, det))


def field_disc_3val(coeffs) -> int:
    """v3 of the discriminant of the cubic field defined by x^3 + c2 x^2 + c1 x + c0.

    Starting from Z[theta], look for z = (sum c_i b_i)/3 with integral
    characteristic polynomial; each one found enlarges the order by index 3
    and lowers v3(disc) by 2. When none exists the order is 3-maximal.
    """
    irreducible_or_raise(coeffs)
    v = v3(cubic_disc(coeffs))
    basis = [(Fraction(1), Fraction(0), Fraction(0)),
             (Fraction(0), Fraction(1), Fraction(0)),
             (Fraction(0), Fraction(0), Fraction(1))]
    while v >= 2:
        for c in product(range(3), repeat=3):
            nz = [i for i in range(3) if c[i]]
            if not nz or c[nz[0]] != 1:
                continue
            z = tuple(sum(c[i] * basis[i][j] for i in range(3)) / 3 for j in range(3))
            if _char_poly_integral(z, coeffs):
                basis[nz[0]] = z
                v -= 2
                break
        else:
            break
    return int(v)


# -- Bertrandias-Payan factor ------------------------------------------------------


def wbp_direct_factor(m: int) -> bool:
    """Is W_k^bp a direct factor of T_k (m = 3 mod 9)?"""
    if m % 9 != 3:
        raise ValueError("W_k^bp is trivial unless m = 3 mod 9")
    k, _ = make_pair(m)
    T = t_k(k)
    if T.ram_status == "Ramified":
        from .class_imag import class_group_object

        rk = class_group_object(k).class_data().rk3
        return len(T.T_k) == rk + 1
    case = classify(m)
    return any(cubic_candidate(b.w).fld_disc_v3 > 0 for b in radical_basis(case))


def radical_rank_checks(case: CaseTag, nrad: int) -> dict:
    """The rank identities tying T_k, W_{k*} and H_{k*} together.

    eq1: rk3(T_k) = rk3(W) - 1.
    Wclass: rk3(W) = rk3(E^{S*}) + rk3(H_{k*}) - rho, with rk3(E^{S*}) = 2
    when 3 splits in k* and 1 otherwise (chi*-components).
    Printed rank line for m != 3 mod 9: rk3(T_k) = rk3(H_{k*}) - 1.
    """
    split = case.m % 9 == 3
    rho = case.rho_Sstar or 0
    wclass = (2 if split else 1) + case.rkstar - rho
    return {
        "eq1": case.rt == nrad - 1,
        "wclass": nrad == wclass,
        "printed_rank_line": (case.rt == case.rkstar - 1) if not split else None,
    }


# -- census ------------------------------------------------------------------------


def census(m_lo: int, m_hi: int) -> dict:
    """Counts of the four cases over the admissible m in [m_lo, m_hi].

    Only the split fields with 3 | h* need the rank test; the other cases
    are decided by the class number of k* alone.
    """
    from . import kernels

    counts = {NON_SPLIT: 0, NORMAL_SPLIT: 0, SPECIAL_SPLIT: 0, TRIVIAL: 0}
    for m in range(max(m_lo, 2), m_hi + 1):
        if m == 3 or not is_squarefree(m):
            continue
        r = m // 3 if m % 3 == 0 else 3 * m
        hstar = kernels.real_class_number(r if r % 4 == 1 else 4 * r)
        if hstar % 3:
            counts[TRIVIAL] += 1
        elif m % 9 != 3:
            counts[NON_SPLIT] += 1
        else:
            counts[classify(m).tag] += 1
    return counts
