from fractions import Fraction
from functools import lru_cache

import pytest

from kummer3.capitulation import (
    _compose,
    _gras_structures,
    _mulmod,
    _xpoly,
    action_matrix,
    capitulate,
    capitulation_verdict,
    class_group_nf,
    compositum,
    expected_fixed_order,
    filtration_length,
    full_kernel_from_rows,
    norm_matrix,
    predict_capitulation,
    structure_classifier,
    transfer_rows,
)
from kummer3.abgroup import subgroup_order
from kummer3.records import three_part

from printed_data import CAPITULE1_HEAD, CAPITULE2_HEAD, H_K3


@lru_cache(maxsize=None)
def report(m):
    return capitulate(m)


def test_compositum_302(pari):
    K = compositum(302, (0, -93, -458))
    assert len(K.R) == 7 and K.R[0] == 1
    R = K.R_low
    x = _xpoly(R)
    s1 = _compose(x, K.sigma, R)
    s3 = _compose(_compose(s1, K.sigma, R), K.sigma, R)
    assert s1 != x and s3 == x
    s = K.sqrt_m
    assert _mulmod(s, s, R) == [Fraction(-302)] + [Fraction(0)] * 5
    assert K.apply_sigma(s) == s  # sqrt(-m) lies in k, fixed by sigma
    # sigma is one of PARI's automorphisms
    conj = [str(pari.Pol(g)) for g in pari.nfgaloisconj(pari(str(K.nf.nf_get_pol())))]
    assert str(pari.lift(K.sigma_pari())) in conj
    # K contains the cubic field: Q has a root in K
    assert pari.nfisincl(pari("x^3-93*x-458"), K.nf) != 0
    assert pari.nfisincl(pari("x^2+302"), K.nf) != 0


@pytest.mark.parametrize("m", sorted(H_K3))
def test_three_parts(m):
    rep = report(m)
    assert rep.H_K3 == H_K3[m] == three_part(rep.H_K)


def test_printed_full_invariants():
    assert report(302).H_K == [12, 3]
    assert report(157019).H_K == [135, 3, 3, 3]
    assert report(87).H_K == [2]


def test_norm_rows():
    assert report(302).norm_rows == [[0, 0], [0, 0]]
    assert report(3647).image_order3 == 9
    # printed rows give the same image order
    assert capitulation_verdict([[3, 0], [0, 0]], [54, 3], 27, "Ramified")[0] == 9


@pytest.mark.parametrize("m,want", [(302, "total"), (3647, 3), (58213, "injective"), (32573, 3)])
def test_kernel_orders(m, want):
    rep = report(m)
    if isinstance(want, str):
        assert rep.verdict == want
    else:
        assert rep.kernel_order == want


def test_78730_against_its_printed_rows():
    # the printed rows give an image of order 9, hence a kernel of order 3, as computed
    rows = [[3, 0, 0, 0], [18, 0, 0, 0], [9, 0, 0, 0], [18, 0, 0, 0]]
    image, ref, kern, _ = capitulation_verdict(rows, [54, 6, 3, 3], 27, "Ramified")
    assert (image, kern) == (9, 3)
    assert report(78730).kernel_order == 3


@pytest.mark.parametrize("m", [302, 3647, 87, 237, 8139, 128451, 32573, 58213, 28477])
def test_structural_invariants(m):
    rep = report(m)
    assert rep.routes_agree
    assert rep.fixed_order == rep.expected_fixed_order  # Chevalley-Herbrand
    # ker J embeds in H^1(G, E_K), of order 3; equality when unramified
    assert rep.kernel_order in (1, 3)
    if rep.ram_status == "Unramified":
        assert rep.kernel_order == 3
    else:
        assert rep.kernel_order == rep.norm_kernel_order  # N is onto: both routes agree
    assert rep.kernel_order == full_kernel_from_rows(rep.image_order3, rep.h3, rep.ram_status)
    # J(H_k) lies in the fixed classes
    assert rep.fixed_order % rep.transfer_image_order == 0
    assert (rep.h3 * 3) % rep.transfer_image_order == 0


def test_unramified_trivial_cases_capitulate():
    for m in (87, 237):
        assert report(m).verdict == "total"
    rep = report(128451)
    assert rep.norm_verdict == "total" and rep.verdict == "partial"


def test_fixed_order_formula():
    assert expected_fixed_order(3, True, "Ramified") == 9
    assert expected_fixed_order(3, False, "Ramified") == 3
    assert expected_fixed_order(9, True, "Unramified") == 3


def test_filtrations():
    assert report(302).filtration == [9] and report(302).n == 1
    rep = report(298)
    assert rep.H_K3 == [3, 3] and rep.filtration == [3, 9] and rep.n == 2
    assert filtration_length([1], 1) == 0


def test_predictions():
    assert report(302).prediction == "total"
    assert report(298).prediction == "total"
    assert report(157019).prediction == "none-predicted"
    assert predict_capitulation([3], [3, 3], "Unramified") == "none-predicted"


@pytest.mark.parametrize("m", CAPITULE1_HEAD + CAPITULE2_HEAD)
def test_capitule_lists(m):
    rep = report(m)
    assert rep.prediction == "total" and rep.verdict == "total"


def test_structure_classifier():
    assert _gras_structures(2) == [[9]]
    assert _gras_structures(3) == [[3, 3, 3], [9, 3]]
    assert structure_classifier([3, 3, 3], 3, 3, fixed_order=3)["verdict"] == "matches"
    assert structure_classifier([9], 3, 2, fixed_order=3)["clause"] == "n<p"
    assert report(298).structure["verdict"] == "not-applicable"


def test_prime_classes_above_3_generate_302():
    rows = report(302).primes_above3
    assert subgroup_order(rows, [3, 3]) == 9


def test_principal_ideal_has_zero_row():
    K = compositum(302, (0, -93, -458))
    cg = class_group_nf(K)
    from kummer3._pari import pari

    z = pari.idealhnf(K.nf, pari("x^2+x+7"))
    assert cg.reduce3(cg.dlog(z)) == [0, 0]
    assert norm_matrix(K, cg) == [[0, 0], [0, 0]]
    A = action_matrix(K, cg)
    assert len(A) == len(cg.invariants)


def test_transfer_matches_the_norm_route_ramified():
    K = compositum(3647, (0, -3, -523))
    cg = class_group_nf(K)
    rows, inv = transfer_rows(K, cg)
    assert subgroup_order(rows, cg.three_invariants) == 9


def test_bad_rows_rejected():
    with pytest.raises(ValueError):
        capitulation_verdict([[1, 0], [0, 1]], [3, 3], 3, "Ramified")
