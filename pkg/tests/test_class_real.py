import pytest

from kummer3 import kernels
from kummer3.class_real import SizeLimit, fundamental_unit, real_field
from kummer3.quadfield import NotPrincipal, QuadField, factor_rational_prime, is_squarefree, make_pair

RADICANDS = [r for r in range(2, 1500) if is_squarefree(r)]


def disc(r):
    return r if r % 4 == 1 else 4 * r


def test_fundamental_units_match_pari(pari):
    bad = []
    for r in RADICANDS[::3]:
        eps = fundamental_unit(QuadField(r, "real")).eps
        u = pari.quadunit(disc(r))
        a, b = int(pari.component(u, 2)), int(pari.component(u, 3))
        t = 1 if disc(r) % 4 == 1 else 0
        if (abs(eps.trace()), eps.norm()) != (abs(2 * a + b * t), int(pari.norm(u))):
            bad.append(r)
    assert not bad


def test_small_units():
    e29 = fundamental_unit(QuadField(29, "real"))
    assert (e29.eps.x, e29.eps.y, e29.norm_eps) == (5 / 2, 1 / 2, -1)
    e2 = fundamental_unit(QuadField(2, "real")).eps
    assert (e2.x, e2.y) == (1, 1)


def test_class_groups_match_pari(pari):
    bad = []
    for r in RADICANDS[::2]:
        G, _ = real_field(QuadField(r, "real")).class_group()
        want = [int(c) for c in pari.quadclassunit(disc(r))[1]]
        if G.invariants != want or kernels.real_class_number(disc(r)) != G.order:
            bad.append((r, G.invariants, want))
    assert not bad


def test_printed_mirror_groups():
    for m, inv in ((157019, [3, 3]), (3647, [6]), (87, [])):
        G, d = real_field(make_pair(m)[1]).class_group()
        assert [x for x in G.invariants if x > 1] == inv
    assert real_field(QuadField(5, "real")).class_group()[0].order == 1


def test_pseudo_units_generate_the_powers():
    R = real_field(make_pair(157019)[1])
    G, _ = R.class_group()
    alphas = R.pseudo_units()
    assert len(alphas) == 2
    for a in alphas:
        assert a.is_integral() and R.dlog(a.ideal()) == [0] * len(G.invariants)
    assert real_field(make_pair(87)[1]).pseudo_units() == []


def test_principal_generator_real():
    R = real_field(QuadField(10, "real"))
    seven = QuadField(10, "real").unit_ideal().scale(7)
    g = R.principal_generator(seven)
    assert abs(g.norm()) == 49 and g.ideal() == seven
    P = factor_rational_prime(QuadField(10, "real"), 2).primes[0]
    with pytest.raises(NotPrincipal):
        R.principal_generator(P)


def test_s_unit_generates_the_power_of_pstar():
    R = real_field(make_pair(201)[1])
    S = R.s_unit()
    assert S.eta.ideal() == S.pstar ** S.ord_pstar
    with pytest.raises(ValueError):
        real_field(make_pair(87)[1]).pstar()


def test_w_pstar_support(pari):
    R = real_field(make_pair(8139)[1])
    w = R.w_pstar()
    n = w.norm()
    assert n.denominator == 1 and round(abs(n) ** (1 / 3)) ** 3 == abs(n)
    # (w) = p* times a cube times a rational: v_p* - v_conj(p*) is 1 mod 3 up to the choice of p*
    nf = pari.nfinit(pari(R.F.pol()))
    P, Pb = pari.idealprimedec(nf, 3)
    z = pari(w.pari_str())
    assert (int(pari.idealval(nf, z, P)) - int(pari.idealval(nf, z, Pb))) % 3 != 0


def test_bit_budget():
    F = QuadField(9199, "real")
    from kummer3.class_real import RealField

    with pytest.raises(SizeLimit):
        RealField(F, bit_budget=4).fundamental_unit()
