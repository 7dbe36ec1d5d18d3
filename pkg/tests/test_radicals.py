import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from kummer3.class_imag import class_group_object
from kummer3.class_real import real_field
from kummer3.quadfield import QuadField, is_squarefree, make_pair
from kummer3.radicals import (
    NORMAL_SPLIT,
    census,
    classify,
    cubic_candidate,
    cubic_candidates_nongalois,
    cubic_disc,
    enumerate_radicals,
    field_disc_3val,
    is_irreducible,
    radical_basis,
    radical_rank_checks,
    wbp_direct_factor,
)

from printed_data import NORMAL_SPLIT_1E4


def test_case_tags():
    assert classify(8139).tag == "SpecialSplit" and classify(8139).program == "P III"
    assert classify(237).tag == "NormalSplit"
    assert classify(87).tag == "Trivial"
    assert classify(157019).tag == "NonSplit"


def test_radical_counts():
    assert [b.name for b in radical_basis(classify(157019))] == ["eps", "alpha_1", "alpha_2"]
    assert [b.name for b in radical_basis(classify(87))] == ["eps"]
    assert [b.name for b in radical_basis(classify(8139))] == ["w_pstar", "eps", "alpha_1"]
    basis = radical_basis(classify(157019))
    for n, want in ((1, 1), (2, 4), (3, 13)):
        rads = enumerate_radicals(basis[:n])
        assert len(rads) == want == (3**n - 1) // 2
        assert [r.index for r in rads] == list(range(1, want + 1))


def test_radicals_are_distinct_mod_cubes():
    rads = enumerate_radicals(radical_basis(classify(157019)))
    digits = {r.digits for r in rads}
    assert len(digits) == 13
    # no digit vector is twice another modulo 3
    for d in digits:
        assert tuple((2 * x) % 3 for x in d) not in digits


def test_cubic_of_the_3647_winner():
    c = cubic_candidate(make_pair(3647)[1].elt(Fraction(-523, 2), Fraction(5, 2)))
    assert c.coeffs == (0, -3, 523)  # x^3 - 3a x - Tr(w) with Tr(w) = -523
    from kummer3.capitulation import reduce_cubic

    assert tuple(reduce_cubic(c.coeffs)) == (0, -3, -523)  # the printed polredbest form
    assert is_irreducible(c.coeffs) and c.polydisc == cubic_disc(c.coeffs)
    assert c.fld_disc_v3 >= 3
    assert field_disc_3val((0, -3, -523)) >= 3
    assert field_disc_3val((0, -1, -1)) == 0


def test_polydisc():
    assert cubic_disc((0, 0, 1)) == -27
    assert cubic_disc((0, -3, -523)) == -4 * (-3) ** 3 - 27 * 523**2


def test_reducible_cubic_rejected():
    F = make_pair(87)[1]
    with pytest.raises(ValueError):
        cubic_candidate(F.elt(8))  # Tr = 16, N = 64: x^3 - 12x - 16 has the root -2


def test_nongalois_traces():
    Fs = make_pair(302)[1]  # 3 does not divide m: sqrt(3m)
    w = Fs.elt(7, 3) * Fs.elt(7, 3).norm()
    pair = cubic_candidates_nongalois(w)
    assert pair.t == QuadField(302).elt(-w.x, -3 * w.y) and pair.t_prime == pair.t.conj()
    Fs = make_pair(87)[1]  # 3 | m: sqrt(m/3)
    w = Fs.elt(5, 1) * Fs.elt(5, 1).norm()
    pair = cubic_candidates_nongalois(w)
    assert pair.t == QuadField(87).elt(-w.x, -w.y)
    w = Fs.elt(4)
    pair = cubic_candidates_nongalois(w * w.norm())
    assert pair.t == pair.t_prime


@given(st.integers(-30, 30), st.integers(-300, 300), st.integers(-3000, 3000))
@settings(max_examples=150, deadline=None)
def test_fld_disc_v3_matches_nfdisc(c2, c1, c0):
    from kummer3._pari import pari, poly

    assume(c0 != 0 and is_irreducible((c2, c1, c0)))
    want = int(pari.valuation(pari.nfdisc(poly([1, c2, c1, c0])), 3))
    assert field_disc_3val((c2, c1, c0)) == want and want in (0, 1, 3, 4, 5)


def test_bp_direct_factor():
    assert not wbp_direct_factor(23178)
    assert wbp_direct_factor(8139)
    with pytest.raises(ValueError):
        wbp_direct_factor(87)


def random_ms(n, seed, hi=30000):
    rng = random.Random(seed)
    out = set()
    while len(out) < n:
        m = rng.randrange(2, hi)
        if m != 3 and is_squarefree(m):
            out.add(m)
    return sorted(out)


def test_scholz_reflection_on_200_fields():
    for m in random_ms(200, 5):
        k, ks = make_pair(m)
        r = class_group_object(k).class_data().rk3
        rs = real_field(ks).class_group()[1].rk3
        assert r - rs in (0, 1), m


def test_rank_identities():
    ms = random_ms(60, 6) + [157019, 8139, 237, 87, 23178, 42591, 27102, 201]
    for m in ms:
        case = classify(m)
        if case.tag == "Trivial" and m % 9 != 3:
            continue  # the basis [eps] is not 3-primary data for eq1
        n = len(radical_basis(case))
        checks = radical_rank_checks(case, n)
        assert checks["eq1"] and checks["wclass"], (m, case.tag, checks)


def test_normal_split_census_small():
    ms = [m for m in range(5, 3000) if m % 9 == 3 and is_squarefree(m) and classify(m).tag == NORMAL_SPLIT]
    assert ms == [m for m in NORMAL_SPLIT_1E4 if m < 3000]


def test_census_counts_are_consistent():
    c = census(2, 3000)
    n = sum(1 for m in range(2, 3001) if m != 3 and is_squarefree(m))
    assert sum(c.values()) == n
    assert c["NormalSplit"] == len([m for m in NORMAL_SPLIT_1E4 if m <= 3000])


EPS_PRIMARY_1E4 = [237, 2190, 2199, 2622, 4017, 4638, 5142, 5646, 6690, 6699, 6789, 7662,
                   7977, 8742, 8751]  # frozen from the 3-adic oracle below


def test_eps_star_primarity_matches_3adic_oracle(pari):
    # a 3-adic unit gives an unramified cubic iff it is a cube in Z_3, i.e. = +-1 mod 9
    primary = []
    for m in NORMAL_SPLIT_1E4:
        e = radical_basis(classify(m))[0].w
        s = pari(f"sqrt({e.F.d}+O(3^4))")
        x = pari(f"{e.x.numerator}/{e.x.denominator}")
        y = pari(f"{e.y.numerator}/{e.y.denominator}")
        cube = all(int(pari.lift(v + pari("O(3^2)"))) in (1, 8) for v in (x + y * s, x - y * s))
        assert cube == (cubic_candidate(e).fld_disc_v3 <= 1), m
        if cube:
            primary.append(m)
    assert primary == EPS_PRIMARY_1E4
