from fractions import Fraction

from hypothesis import given, settings, strategies as st

from kummer3.padlog import (
    INF,
    certified_cutoff,
    log_series_C1,
    minus_log_exact,
    minus_log_fast,
    minus_log_test,
    program_cutoff,
    v3,
)
from kummer3.quadfield import QuadField


def test_v3():
    assert v3(477) == 2 and v3(Fraction(1, 3)) == -1 and v3(Fraction(54, 2)) == 3
    assert v3(0) == INF


def test_series_leading_terms():
    # log(1 + 9 sqrt(-2)): sqrt(-2)-part 9 - 486 + (terms with v3 >= 10)
    F = QuadField(2)
    C1 = log_series_C1(F, F.elt(0, 9), 9)
    assert v3(C1 - (-477)) >= 10


def test_gamma_doubles_the_coefficient():
    # the test is run on gamma = beta^2 (3 splits in Q(sqrt(-2))), whose log is twice log(beta)
    F = QuadField(2)
    beta = F.elt(1, 9)
    C1 = minus_log_exact(beta, 1, extra_terms=20).C1
    assert v3(C1 - 2 * (-477)) >= 10


def test_pass_and_fail_vectors():
    F = QuadField(2)
    ok, rec = minus_log_test(F.elt(1, 9), 1, exact=True)
    assert ok and rec.v3C1 == 2
    ok, rec = minus_log_test(F.elt(1, 3), 2, exact=True)
    assert not ok and rec.v3C1 == 1
    ok, rec = minus_log_test(F.elt(1), 5, exact=True)
    assert ok and rec.v3C1 == INF


def test_strict_threshold():
    F = QuadField(2)
    assert not minus_log_test(F.elt(1, 9), 2, exact=True)[0]  # v3(C1) = 2 = Val fails


def test_program_cutoff_loop():
    # while(t <= e0*(Val + log(t) + 1), t++)
    from math import log

    for e0 in (1, 2):
        for val in range(0, 8):
            t = program_cutoff(e0, val)
            assert t > e0 * (val + log(t) + 1)
            assert t - 1 <= e0 * (val + log(t - 1) + 1)


def test_certified_cutoff_bounds_the_tail():
    for kind, v in (("unram", 1), ("unram", 2), ("ram", 1), ("ram", 3)):
        for val in range(1, 7):
            T = certified_cutoff(kind, v, val)
            for t in range(T + 1, T + 60):
                k = 0
                n = t
                while n % 3 == 0:
                    n //= 3
                    k += 1
                low = t * v - k if kind == "unram" else -(-(t * v - 1) // 2) - k
                assert low >= val + 1


MS = [2, 5, 7, 23, 87, 107, 302, 3647, 8139, 157019]


def unit_at_3(m, a, b):
    F = QuadField(m)
    z = F.from_omega(a, b)
    if not z or z.norm() % 3 == 0:
        return None
    return z


@given(st.sampled_from(MS), st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), st.integers(1, 5))
@settings(max_examples=200, deadline=None)
def test_verdict_stable_under_doubled_truncation(m, a, b, val):
    beta = unit_at_3(m, a, b)
    if beta is None:
        return
    r1 = minus_log_exact(beta, val)
    r2 = minus_log_exact(beta, val, extra_terms=max(r1.trunc_t, 1))  # truncation doubled
    assert (r1.v3C1 > val) == (r2.v3C1 > val)
    assert min(r1.v3C1, val + 1) == min(r2.v3C1, val + 1)


@given(st.sampled_from(MS), st.integers(-10**9, 10**9), st.integers(-10**9, 10**9), st.integers(1, 6))
@settings(max_examples=200, deadline=None)
def test_fast_path_agrees_with_exact(m, a, b, val):
    beta = unit_at_3(m, a, b)
    if beta is None:
        return
    fast, rf = minus_log_fast(beta, val)
    exact = minus_log_exact(beta, val)
    assert fast == (exact.v3C1 > val)
    assert rf.v3C1 == min(exact.v3C1, val + 1)
