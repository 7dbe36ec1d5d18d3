"""Finite abelian groups given by cyclic invariants, generators and a dlog."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod
from typing import Any, Callable, Hashable, Sequence

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp


def v_p(n: int, p: int = 3) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def snf(rows: Sequence[Sequence[int]], ncols: int):
    """Smith form of an integer relation matrix.

    Returns (diag, V, Vinv) with diag of length ncols (zeros for free parts),
    such that row-lattice(rows) * V = diag lattice.
    """
    if not rows:
        eye = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
        return [0] * ncols, eye, eye
    M = Matrix(rows)
    S, _U, V = smith_normal_decomp(M, domain=ZZ)
    diag = [abs(int(S[i, i])) if i < S.rows else 0 for i in range(ncols)]
    Vinv = V.inv()
    V = [[int(V[i, j]) for j in range(ncols)] for i in range(ncols)]
    Vinv = [[int(Vinv[i, j]) for j in range(ncols)] for i in range(ncols)]
    return diag, V, Vinv


def invariants_from_relations(rows, ncols: int) -> list[int]:
    """Cyclic invariants (descending, >1) of Z^ncols / row-lattice."""
    diag, _, _ = snf(rows, ncols)
    if any(d == 0 for d in diag):
        raise ValueError("relation lattice is not of full rank")
    return sorted((d for d in diag if d > 1), reverse=True)


@dataclass
class AbGroup:
    """Invariants descending (d1 multiple of d2 ...), generators and dlog.

    ``dlog`` maps a group element (whatever the owner uses: ideals, classes)
    to its exponent vector on ``generators``.
    """

    invariants: list[int]
    generators: list[Any] = field(default_factory=list)
    dlog: Callable[[Any], list[int]] | None = None

    @property
    def order(self) -> int:
        return prod(self.invariants)

    def rank(self, p: int = 3) -> int:
        return sum(1 for d in self.invariants if d % p == 0)

    @property
    def exponent(self) -> int:
        return self.invariants[0] if self.invariants else 1

    def p_part(self, p: int = 3) -> "PPart":
        idx = [i for i, d in enumerate(self.invariants) if d % p == 0]
        inv = [p ** v_p(self.invariants[i], p) for i in idx]
        cof = [self.invariants[i] // inv[j] for j, i in enumerate(idx)]
        return PPart(self, p, idx, inv, cof)

    def __repr__(self):
        return f"AbGroup({self.invariants})"


@dataclass
class PPart:
    """Sylow p-subgroup of an AbGroup; generator i is g_idx[i]^cof[i]."""

    parent: AbGroup
    p: int
    idx: list[int]
    invariants: list[int]
    cofactors: list[int]

    @property
    def order(self) -> int:
        return prod(self.invariants)

    @property
    def rank(self) -> int:
        return len(self.invariants)

    @property
    def exponent(self) -> int:
        return max(self.invariants, default=1)

    def project(self, vec: Sequence[int]) -> list[int]:
        """Coordinates on the p-part generators of the p-component of vec."""
        out = []
        for j, i in enumerate(self.idx):
            pe, cof = self.invariants[j], self.cofactors[j]
            # g^x, g of order pe*cof; its p-component is (g^cof)^(x * cof^-1 mod pe)
            out.append(vec[i] * pow(cof, -1, pe) % pe if pe > 1 else 0)
        return out


class Presented:
    """The finite group Z^ncols / row-lattice(rows) in Smith coordinates."""

    def __init__(self, rows: Sequence[Sequence[int]], ncols: int):
        diag, V, Vinv = snf(rows, ncols)
        if any(d == 0 for d in diag):
            raise ValueError("relation lattice is not of full rank")
        self.ncols = ncols
        self._keep = sorted((i for i in range(ncols) if diag[i] > 1), key=lambda i: -diag[i])
        self.invariants = [diag[i] for i in self._keep]
        self._V = V
        self._Vinv = Vinv

    def reduce(self, vec: Sequence[int]) -> list[int]:
        """Smith coordinates of the class of vec."""
        V = self._V
        return [sum(vec[k] * V[k][i] for k in range(self.ncols)) % self.invariants[j]
                for j, i in enumerate(self._keep)]

    def lift(self, j: int) -> list[int]:
        """Vector on the original columns representing Smith generator j."""
        return list(self._Vinv[self._keep[j]])


def subgroup_order(rows: Sequence[Sequence[int]], invariants: Sequence[int]) -> int:
    """Order of the subgroup of prod Z/d_i generated by the given vectors."""
    r = len(invariants)
    if r == 0:
        return 1
    lattice = [list(row) for row in rows] + [
        [d if i == j else 0 for j in range(r)] for i, d in enumerate(invariants)
    ]
    diag, _, _ = snf(lattice, r)
    index = prod(diag)  # [Z^r : generated + relations]
    return prod(invariants) // index


def kernel_order(matrix: Sequence[Sequence[int]], invariants: Sequence[int]) -> int:
    """Order of the kernel of x -> x*matrix on prod Z/d_i (row convention).

    For an endomorphism of a finite group the kernel and cokernel have the
    same order, and the cokernel is Z^r / (rows + relations).
    """
    r = len(invariants)
    if r == 0:
        return 1
    lattice = [list(row) for row in matrix] + [
        [d if i == j else 0 for j in range(r)] for i, d in enumerate(invariants)
    ]
    diag, _, _ = snf(lattice, r)
    return prod(diag)


def build_structure(
    elements,
    mul: Callable[[Hashable, Hashable], Hashable],
    identity: Hashable,
    order: int,
) -> tuple[list[int], list[list[int]], dict]:
    """Structure of a finite abelian group from an element stream.

    ``elements`` is an iterable over all group elements; ``mul`` composes.
    Returns (invariants, new generators as exponent vectors on the chosen
    generating set with their elements, table) where table maps each element
    to its SNF exponent vector.
    """
    table: dict = {identity: ()}
    gens: list = []
    rels: list[tuple[int, tuple]] = []
    for g in elements:
        if len(table) == order:
            break
        if g in table:
            continue
        n, x = 1, g
        while x not in table:
            x = mul(x, g)
            n += 1
        rels.append((n, table[x]))
        items = list(table.items())
        new = {}
        power = identity
        for i in range(n):
            for s, v in items:
                new[mul(s, power) if i else s] = v + (i,)
            power = mul(power, g)
        table = new
        gens.append(g)
    if len(table) != order:
        raise RuntimeError(f"element stream generated {len(table)} of {order} elements")
    r = len(gens)
    rows = []
    for j, (n, vec) in enumerate(rels):
        row = [0] * r
        for i, e in enumerate(vec):
            row[i] -= e
        row[j] += n
        rows.append(row)
    diag, V, Vinv = snf(rows, r)
    keep = [i for i in range(r) if diag[i] > 1]
    keep.sort(key=lambda i: -diag[i])
    invariants = [diag[i] for i in keep]

    def convert(vec):
        vec = tuple(vec) + (0,) * (r - len(vec))
        return [sum(vec[k] * V[k][i] for k in range(r)) % diag[i] for i in keep]

    snf_table = {g: convert(v) for g, v in table.items()}
    gen_vectors = [[Vinv[i][k] for k in range(r)] for i in keep]
    return invariants, [(gv, gens) for gv in gen_vectors], snf_table


def element_from_vector(vec, gens, mul, identity, power):
    """prod gens[k]^vec[k] with ``power(g, e)`` for e >= 0 after reduction."""
    x = identity
    for e, g in zip(vec, gens):
        if e:
            x = mul(x, power(g, e))
    return x


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b
