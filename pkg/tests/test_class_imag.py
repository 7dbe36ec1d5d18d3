import pytest

from kummer3 import kernels
from kummer3.abgroup import AbGroup
from kummer3.class_imag import class_group, class_group_object, principal_generator, three_part
from kummer3.quadfield import NotPrincipal, QuadField, QuadIdeal, factor_rational_prime, is_squarefree, kronecker_symbol


def fundamental_discs(bound):
    for m in range(1, bound + 1):
        if m == 3 or not is_squarefree(m):
            continue
        D = -m if -m % 4 == 1 else -4 * m
        if -D <= bound:
            yield m, D


def dirichlet_class_number(D):
    """h(D) = -(w / 2|D|) sum chi(a) a, an oracle independent of forms and ideals."""
    w = 4 if D == -4 else (6 if D == -3 else 2)
    s = sum(kronecker_symbol(D, a) * a for a in range(1, -D))
    assert (-w * s) % (2 * -D) == 0
    return -w * s // (2 * -D)


def test_class_numbers_match_analytic_formula_to_5000():
    bad = [(D, kernels.imag_class_number(D)) for _, D in fundamental_discs(5000)
           if kernels.imag_class_number(D) != dirichlet_class_number(D)]
    assert not bad


def test_structures_match_pari(pari):
    bad = []
    for m, D in fundamental_discs(5000):
        if m % 7:  # every 7th field keeps the test short; counts are checked above
            continue
        G, _ = class_group(QuadField(m))
        want = [int(c) for c in pari.quadclassunit(D)[1]]
        if G.invariants != want:
            bad.append((m, G.invariants, want))
    assert not bad


def test_printed_groups():
    G, data = class_group(QuadField(157019))
    assert G.order == 135 and G.invariants == [45, 3]
    assert three_part(G).invariants == [9, 3]
    assert (data.h3, data.Exp, data.hta, data.rk3) == (27, 9, 5, 2)
    assert class_group(QuadField(23))[0].order == 3
    assert class_group(QuadField(1))[0].order == 1
    assert three_part(class_group(QuadField(302))[0]).invariants == [3]


def test_class_data_invariants():
    for m in (5, 23, 87, 302, 3647, 8139):
        _, d = class_group(QuadField(m))
        assert d.h == d.h3 * d.hta and d.h3 % d.Exp == 0 and d.hta % 3


def test_three_part_of_two_torsion():
    assert three_part(AbGroup([2, 2], [], None)).invariants == []


def test_principal_generators():
    F = QuadField(23)
    five = QuadIdeal(F, 5, 0, 5)
    assert principal_generator(F, five) == F.elt(5) or principal_generator(F, five) == F.elt(-5)
    P = factor_rational_prime(F, 2).primes[0]
    beta = principal_generator(F, P**3)
    assert abs(beta.norm()) == 8 and beta.ideal() == P**3
    with pytest.raises(NotPrincipal):
        principal_generator(F, P)


def test_dlog_is_a_homomorphism():
    F = QuadField(3647)
    cg = class_group_object(F)
    inv = cg.group.invariants
    ps = [P for q in (2, 7, 11, 13) for P in factor_rational_prime(F, q).primes][:4]
    for A in ps:
        for B in ps:
            lhs = cg.dlog(A * B)
            rhs = [(x + y) % n for x, y, n in zip(cg.dlog(A), cg.dlog(B), inv)]
            assert lhs == rhs
