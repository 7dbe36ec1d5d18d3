"""The sextic field K = k_1^ac, its class group, and the capitulation of H_k in K."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

import mpmath
from sympy import Poly, gcd as poly_gcd, resultant, symbols

from ._pari import pari, poly, to_ints
from .abgroup import kernel_order, subgroup_order, v_p
from .class_imag import class_group_object, three_part
from .quadfield import QuadField, kronecker_symbol
from .radicals import irreducible_or_raise
from .rayclass import t_k


class SigmaNotFound(Exception):
    """No order-3 automorphism was certified (K is not Galois of type S3?)."""


# -- polynomial arithmetic in Q[x]/(R), coefficients low degree first -----------------


def _mulmod(a, b, R):
    """a*b mod the monic R (R low degree first, length deg+1)."""
    n = len(R) - 1
    p = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                p[i + j] += x * y
    for k in range(len(p) - 1, n - 1, -1):
        t = p[k]
        if t:
            p[k] = Fraction(0)
            for i in range(n):
                p[k - n + i] -= t * R[i]
    return (p + [Fraction(0)] * n)[:n]


def _compose(f, g, R):
    """f(g(x)) mod R, by Horner."""
    n = len(R) - 1
    acc = [Fraction(0)] * n
    for c in reversed(f):
        acc = _mulmod(acc, g, R)
        acc[0] += c
    return acc


def _xpoly(R):
    n = len(R) - 1
    return [Fraction(0), Fraction(1)] + [Fraction(0)] * (n - 2)


def _is_zero(a) -> bool:
    return all(c == 0 for c in a)


# -- the sextic field --------------------------------------------------------------


@dataclass
class SexticField:
    m: int
    Q: tuple  # the cubic as given, (c2, c1, c0)
    Q_red: tuple  # polredbest form of Q
    R_raw: list  # char poly of theta + lam*sqrt(-m), leading coefficient first
    lam: int
    R: list  # working defining polynomial (polredbest of R_raw), leading first
    disc: int  # polynomial discriminant of R
    field_disc: int
    integral_basis: list  # PARI zk, as strings
    sigma: list  # sigma(x) mod R, Fraction coefficients low degree first
    sqrt_m: list  # s(x) with s^2 = -m mod R
    nf: object = field(repr=False, default=None)

    @property
    def R_low(self) -> list:
        return [Fraction(c) for c in reversed(self.R)]

    def sigma_pari(self):
        return pari("Mod(" + str(poly([c for c in reversed(self.sigma)])) + "," + str(poly(self.R)) + ")")

    def apply_sigma(self, a):
        return _compose(a, self.sigma, self.R_low)


def reduce_cubic(Q):
    red = pari.polredbest(poly([1, *Q]))
    c = to_ints(pari.Vec(red))
    return tuple(c[1:])


def compositum(m: int, Q) -> SexticField:
    """K = k(theta), theta a root of Q, by the resultant construction."""
    Q = tuple(int(c) for c in Q)
    irreducible_or_raise(Q)
    Qr = reduce_cubic(Q)
    y, z = symbols("y z")
    Qy = y**3 + Qr[0] * y**2 + Qr[1] * y + Qr[2]
    for lam in itertools.count(1):
        Rz = Poly(resultant(Qy, (z - y) ** 2 + lam * lam * m, y), z)
        if Rz.degree() == 6 and poly_gcd(Rz, Rz.diff(z)).degree() == 0:
            break
    R_raw = [int(c) for c in Rz.all_coeffs()]
    R = to_ints(pari.Vec(pari.polredbest(poly(R_raw))))
    nf = pari.nfinit(poly(R))
    K = SexticField(
        m=m, Q=Q, Q_red=Qr, R_raw=R_raw, lam=lam, R=R,
        disc=int(pari.poldisc(poly(R))),
        field_disc=int(pari.nfdisc(poly(R))),
        integral_basis=[str(b) for b in nf.nf_get_zk()],
        sigma=[], sqrt_m=[], nf=nf,
    )
    K.sigma = find_sigma(K.R, K.disc)
    K.sqrt_m = _sqrt_witness(K)
    return K


def _order3_perms(n=6):
    for p in itertools.permutations(range(n)):
        if all(p[i] != i for i in range(n)) and all(p[p[p[i]]] == i for i in range(n)):
            yield p


def find_sigma(R, disc: int) -> list:
    """An automorphism of order 3, as a polynomial in the root of R.

    Exhaustive search over the fixed-point-free order-3 permutations of the
    complex roots; each candidate is interpolated numerically, rounded with
    denominator disc(R) and then verified exactly.
    """
    R_low = [Fraction(c) for c in reversed(R)]
    x = _xpoly(R_low)
    size = len(str(abs(disc))) + max(len(str(abs(c))) for c in R)
    for dps in (2 * size + 40, 4 * size + 80):
        with mpmath.workdps(dps):
            roots = mpmath.polyroots(R, maxsteps=800, extraprec=2 * dps)
            V = mpmath.matrix([[r**j for j in range(6)] for r in roots])
            tol = mpmath.mpf(10) ** (-dps // 3)
            for perm in _order3_perms():
                rhs = mpmath.matrix([roots[perm[i]] for i in range(6)])
                try:
                    sol = mpmath.lu_solve(V, rhs)
                except ZeroDivisionError:
                    continue
                if max(abs(mpmath.im(c)) for c in sol) > tol:
                    continue
                g = [Fraction(int(mpmath.nint(mpmath.re(c) * disc)), disc) for c in sol]
                if g == x:
                    continue
                if not _is_zero(_compose([Fraction(c) for c in R_low], g, R_low)):
                    continue
                g3 = _compose(g, _compose(g, g, R_low), R_low)
                if g3 == x:
                    return g
    raise SigmaNotFound(f"no order-3 automorphism certified for {R}")


def _sqrt_witness(K: SexticField) -> list:
    """s in K with s^2 = -m, found from a relative trace to k (fixed by sigma)."""
    R = K.R_low
    x = _xpoly(R)
    power = x
    for _ in range(5):
        s1 = K.apply_sigma(power)
        s2 = K.apply_sigma(s1)
        T = [a + b + c for a, b, c in zip(power, s1, s2)]
        power = _mulmod(power, x, R)
        if all(c == 0 for c in T[1:]):
            continue  # T is rational
        T2 = _mulmod(T, T, R)
        i = next(j for j in range(1, len(T)) if T[j])
        u2 = T2[i] / T[i]  # T^2 - u2*T is rational
        rest = [a - u2 * b for a, b in zip(T2, T)]
        if any(rest[1:]):
            continue
        u = u2 / 2
        sp = list(T)
        sp[0] -= u
        r = _mulmod(sp, sp, R)[0]  # sp^2 = r in Q
        q2 = Fraction(-K.m) / r
        num, den = q2.numerator, q2.denominator
        rn, rd = _isqrt_exact(num), _isqrt_exact(den)
        if rn is None or rd is None:
            continue
        s = [c * Fraction(rn, rd) for c in sp]
        s2_ = _mulmod(s, s, R)
        assert s2_[0] == -K.m and not any(s2_[1:])
        return s
    raise SigmaNotFound("no element of k found in K")


def _isqrt_exact(n: int):
    from math import isqrt
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


# -- class group of K -----------------------------------------------------------------


@dataclass
class ClassGroupNF:
    invariants: list[int]
    bnf: object = field(repr=False)
    conditional: bool = True  # GRH-conditional unless certified

    @property
    def gens(self):
        return list(self.bnf.bnf_get_gen())

    def dlog(self, ideal) -> list[int]:
        return to_ints(pari.bnfisprincipal(self.bnf, ideal, 0))

    @property
    def three_idx(self) -> list[int]:
        return [i for i, d in enumerate(self.invariants) if d % 3 == 0]

    @property
    def three_invariants(self) -> list[int]:
        return [3 ** v_p(self.invariants[i], 3) for i in self.three_idx]

    def reduce3(self, vec) -> list[int]:
        """Entry j modulo the 3-part order of invariant j, full length."""
        return [int(c) % (3 ** v_p(d, 3)) if d % 3 == 0 else 0
                for c, d in zip(vec, self.invariants)]

    def restrict3(self, vec) -> list[int]:
        return [int(vec[i]) % (3 ** v_p(self.invariants[i], 3)) for i in self.three_idx]


def class_group_nf(K: SexticField, strict: bool = False) -> ClassGroupNF:
    bnf = pari.bnfinit(poly(K.R), 1)
    inv = to_ints(bnf.bnf_get_cyc())
    conditional = True
    if strict:
        conditional = int(pari.bnfcertify(bnf)) != 1
    return ClassGroupNF(inv, bnf, conditional)


# -- norm rows, action matrix, transfer ------------------------------------------------


def _sigma_ideal(K: SexticField, cg: ClassGroupNF, ideal):
    return pari.nfgaloisapply(cg.bnf, K.sigma_pari(), ideal)


def norm_matrix(K: SexticField, cg: ClassGroupNF) -> list[list[int]]:
    """Rows nu(g_i) = g_i * sigma(g_i) * sigma^2(g_i), entries reduced mod the 3-part orders."""
    rows = []
    for X0 in cg.gens:
        X = pari.idealhnf(cg.bnf, 1)
        for _ in range(3):
            X = pari.idealmul(cg.bnf, X0, _sigma_ideal(K, cg, X))
        rows.append(cg.reduce3(cg.dlog(X)))
    return rows


def action_matrix(K: SexticField, cg: ClassGroupNF) -> list[list[int]]:
    """Row i: class of sigma(g_i) on the generators (full coordinates)."""
    return [cg.dlog(_sigma_ideal(K, cg, g)) for g in cg.gens]


def _matmul(A, B):
    return [[sum(a * B[k][j] for k, a in enumerate(row)) for j in range(len(B[0]))] for row in A]


def _three_action(cg: ClassGroupNF, A) -> list[list[int]]:
    """Action on H_K / (prime-to-3 part), in the 3-part coordinates."""
    return [cg.restrict3(A[i]) for i in cg.three_idx]


def norm_rows_from_action(cg: ClassGroupNF, A) -> list[list[int]]:
    """1 + A + A^2, reduced like norm_matrix (second route for the same rows)."""
    r = len(A)
    eye = [[int(i == j) for j in range(r)] for i in range(r)]
    A2 = _matmul(A, A)
    return [cg.reduce3([eye[i][j] + A[i][j] + A2[i][j] for j in range(r)]) for i in range(r)]


def transfer_rows(K: SexticField, cg: ClassGroupNF) -> tuple[list, list]:
    """Classes in K of the 3-part generators of H_k, extended to K via sqrt(-m)."""
    F = QuadField(K.m)
    G3 = three_part(class_group_object(F).group)
    om = F.omega
    s = K.sqrt_m
    om_K = [om.y * c for c in s]
    om_K[0] += om.x
    om_pari = pari("Mod(" + str(poly([c for c in reversed(om_K)])) + "," + str(poly(K.R)) + ")")
    rows = []
    for I in G3.generators:
        gen2 = pari(I.b) + pari(I.c) * om_pari
        J = pari.idealadd(cg.bnf, pari.idealhnf(cg.bnf, I.a), pari.idealhnf(cg.bnf, gen2))
        rows.append(cg.restrict3(cg.dlog(J)))
    return rows, G3.invariants


def fixed_classes(cg: ClassGroupNF, A) -> int:
    """#H_K^{G_1} on the 3-part: the kernel of sigma - 1."""
    return filtration_orders(cg, A, upto=1)[0]


def filtration_orders(cg: ClassGroupNF, A, upto: int | None = None) -> list[int]:
    """#H^i = #ker (sigma - 1)^i on the 3-part, i = 1, 2, ... until H^i = H."""
    inv = cg.three_invariants
    total = prod(inv)
    if total == 1:
        return [1]
    B = _three_action(cg, A)
    r = len(B)
    M1 = [[B[i][j] - int(i == j) for j in range(r)] for i in range(r)]
    M = M1
    out = []
    cap = upto or 4 * sum(v_p(d, 3) for d in inv) + 4
    for _ in range(cap):
        M = [[c % inv[j] for j, c in enumerate(row)] for row in M]
        out.append(kernel_order(M, inv))
        if out[-1] == total:
            break
        M = _matmul(M, M1)
    return out


def filtration_length(orders: list[int], total: int) -> int:
    """Least i with H^i = H (0 for the trivial group)."""
    if total == 1:
        return 0
    return next(i + 1 for i, o in enumerate(orders) if o == total)


def principal_prime_classes_above3(K: SexticField, cg: ClassGroupNF) -> list[list[int]]:
    return [cg.reduce3(cg.dlog(P)) for P in pari.idealprimedec(cg.bnf, 3)]


# -- verdicts ---------------------------------------------------------------------


@dataclass
class CapitulationReport:
    m: int
    H_K: list
    H_K3: list
    norm_rows: list
    image_order3: int
    reference_order: int
    kernel_order: int  # ker J on the whole of H_k (3-part)
    verdict: str  # total | partial | injective, for J on H_k
    conditional: bool
    ram_status: str
    h3: int
    transfer_image_order: int | None = None
    norm_kernel_order: int | None = None  # ker J on the norm image N(H_K)
    norm_verdict: str | None = None
    fixed_order: int | None = None
    expected_fixed_order: int | None = None
    filtration: list = field(default_factory=list)
    n: int | None = None
    primes_above3: list = field(default_factory=list)
    routes_agree: bool | None = None
    prediction: str | None = None
    structure: dict | None = None
    sextic_poly: list | None = None


def capitulation_verdict(norm_rows, H_K, h3: int, ram_status: str) -> tuple[int, int, int, str]:
    """(image_order3, reference_order, kernel_order, verdict) from the printed-style rows.

    Ramified: N is onto H_k, so nu(H_K) = J(H_k) and ker J has order h3/#image.
    Unramified: N(H_K) = H'_k has index 3 in H_k and the kernel is taken on H'_k.
    """
    idx = [i for i, d in enumerate(H_K) if d % 3 == 0]
    inv3 = [3 ** v_p(H_K[i], 3) for i in idx]
    rows3 = [[int(row[i]) for i in idx] for row in norm_rows]
    image = subgroup_order(rows3, inv3) if inv3 else 1
    ref = h3 if ram_status == "Ramified" else h3 // 3
    if ref % image:
        raise ValueError(f"image of order {image} does not divide the reference order {ref}")
    kern = ref // image
    return image, ref, kern, verdict_from(image, kern)


def full_kernel_from_rows(image: int, h3: int, ram_status: str) -> int:
    """#ker J on H_k from the norm image alone.

    ker J embeds in H^1(G, E_K), of order 3 here (E_k = N(E_K), Herbrand
    quotient 1/3), with equality when K/k is unramified.
    """
    if ram_status == "Ramified":
        return h3 // image
    return 3 if h3 > 1 else 1


def verdict_from(image: int, kernel: int) -> str:
    if kernel == 1:
        return "injective"
    return "total" if image == 1 else "partial"


def expected_fixed_order(h3: int, split: bool, ram_status: str) -> int:
    """Chevalley-Herbrand in K/k (units of k are norms)."""
    if ram_status != "Ramified":
        return h3 // 3
    return 3 * h3 if split else h3


def predict_capitulation(h_k3: list, H_K3: list, ram_status: str) -> str:
    """Total capitulation forced by the structures alone (split or not)."""
    if ram_status == "Ramified" and list(h_k3) == [3] and sorted(H_K3) == [3, 3]:
        return "total"
    return "none-predicted"


def _kw_structures(mexp: int, smax: int) -> list[list[int]]:
    """Allowed 3-class groups of K for H_k cyclic of order 3^mexp, J injective, p = 3."""
    p = 3
    out = [[p**mexp] * p]
    for s in range(mexp, smax + 1):
        for a in range(1, p):
            out.append([p ** (mexp - 1)] + [p ** (s + 1)] * a + [p**s] * (p - 1 - a))
    for s in range(0, mexp):
        for b in range(0, p - 1):
            if mexp == s + 1 and b == p - 2:
                continue
            out.append([p ** (mexp + 1)] + [p ** (s + 1)] * b + [p**s] * (p - 1 - b))
    return [sorted((d for d in g if d > 1), reverse=True) for g in out]


def _gras_structures(n: int) -> list[list[int]]:
    """Allowed H_K (p = 3) when #H^1 = 3 and nu(H_K) != 1, n = least i with H^i = H."""
    p = 3
    if n < 2:
        return []
    if n < p:
        return [[p * p] + [p] * (n - 2)]
    if n == p:
        return [[p] * p, [p * p] + [p] * (p - 2)]
    a, b = divmod(n, p - 1)
    g = [p ** (a + 1)] * b + [p**a] * (p - 1 - b)
    return [sorted((d for d in g if d > 1), reverse=True)]


def structure_classifier(H_K3, h3: int, n: int | None, norm_trivial: bool = False,
                         split: bool = False, h_k_cyclic: bool = True,
                         injective: bool | None = None, fixed_order: int | None = None,
                         ramified: bool = True) -> dict:
    """Check H_K3 against the structure theorems whose hypotheses hold.

    'violates' would mean a hypothesis is silently false (hidden capitulation,
    wrong class group), so it is a consistency alarm rather than a result.
    """
    H = sorted((d for d in H_K3 if d > 1), reverse=True)
    if norm_trivial:
        return {"clause": "capitulation branch", "verdict": "not-applicable"}
    out = {}
    if ramified and h3 == 3 and n is not None and fixed_order in (None, 3):
        allowed = _gras_structures(n)
        clause = "n<p" if n < 3 else ("n=p" if n == 3 else "n>p")
        ok = H in allowed and prod(H) == 3**n
        out.update(clause=clause, verdict="matches" if ok else "violates", allowed=allowed)
    if ramified and not split and h_k_cyclic and h3 > 1 and injective:
        mexp = v_p(h3, 3)
        smax = max((v_p(d, 3) for d in H), default=0) + 1
        out["kw"] = "matches" if H in _kw_structures(mexp, smax) else "violates"
    if not out:
        return {"clause": None, "verdict": "not-applicable"}
    return out


# -- pipeline ----------------------------------------------------------------------


def capitulate(m: int, Q=None, strict: bool = False, layer=None) -> CapitulationReport:
    """Full capitulation analysis in the first layer; finds the layer when Q is not given."""
    F = QuadField(m)
    T = t_k(F)
    if Q is None:
        if layer is None:
            from .layersearch import find_first_layer
            layer = find_first_layer(m)
        if layer.Q is None:
            raise ValueError(f"m={m}: no unique first layer")
        Q = layer.Q.coeffs
    K = compositum(m, Q)
    cg = class_group_nf(K, strict=strict)
    rows = norm_matrix(K, cg)
    A = action_matrix(K, cg)
    routes_agree = rows == norm_rows_from_action(cg, A)
    image, ref, kern, nverdict = capitulation_verdict(rows, cg.invariants, T.h3, T.ram_status)
    trows, _ = transfer_rows(K, cg)
    timage = subgroup_order(trows, cg.three_invariants) if cg.three_invariants else 1
    kfull = T.h3 // timage
    split = kronecker_symbol(-m, 3) == 1
    filt = filtration_orders(cg, A)
    total3 = prod(cg.three_invariants)
    n = filtration_length(filt, total3)
    h_k3 = three_part(class_group_object(F).group).invariants
    rep = CapitulationReport(
        m=m, H_K=cg.invariants, H_K3=cg.three_invariants, norm_rows=rows,
        image_order3=image, reference_order=ref, kernel_order=kfull,
        verdict=verdict_from(timage, kfull),
        conditional=cg.conditional, ram_status=T.ram_status, h3=T.h3,
        transfer_image_order=timage, norm_kernel_order=kern, norm_verdict=nverdict,
        fixed_order=filt[0] if total3 > 1 else 1,
        expected_fixed_order=expected_fixed_order(T.h3, split, T.ram_status),
        filtration=filt, n=n,
        primes_above3=principal_prime_classes_above3(K, cg),
        routes_agree=routes_agree,
        prediction=predict_capitulation(h_k3, cg.three_invariants, T.ram_status),
        structure=structure_classifier(
            cg.three_invariants, T.h3, n, norm_trivial=(image == 1), split=split,
            h_k_cyclic=len(h_k3) <= 1, injective=(timage == T.h3),
            fixed_order=filt[0] if total3 > 1 else 1, ramified=T.ram_status == "Ramified"),
        sextic_poly=K.R,
    )
    return rep
