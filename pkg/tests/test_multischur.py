import pytest
from hypothesis import given, settings, strategies as st

from vexpf.polycore import Dyadic, Polynomial
from vexpf.gamma import GammaElement, GeneratorSeries, Q_SERIES, UNIT_SERIES
from vexpf.multischur import (
    DivisibilityFailed,
    SkewCheckFailed,
    StarRelationFailed,
    multischur_det,
    multischur_pf,
    multischur_pf_d,
    rational_series,
)


def tvar(i):
    return Polynomial.variable("t", i)


def q_times(poly):
    return GeneratorSeries(True, poly)


E2 = (1 + tvar(1)) * (1 + tvar(2))


class TestDet:
    def test_schur_21_two_vars(self):
        x1 = Polynomial.variable("x", 1)
        x2 = Polynomial.variable("x", 2)
        h = rational_series([], [1 - x1, 1 - x2], 6)
        got = multischur_det((2, 1), [h, h])
        assert got == x1 * x2 * (x1 + x2)

    def test_schur_2_two_vars(self):
        x1 = Polynomial.variable("x", 1)
        x2 = Polynomial.variable("x", 2)
        h = rational_series([], [1 - x1, 1 - x2], 6)
        assert multischur_det((2,), [h]) == x1**2 + x1 * x2 + x2**2

    def test_elementary_column(self):
        # det with an elementary-symmetric series row: e_2 in two vars
        x1 = Polynomial.variable("x", 1)
        x2 = Polynomial.variable("x", 2)
        e = (1 + x1) * (1 + x2)
        assert multischur_det((2,), [e]) == x1 * x2

    def test_empty(self):
        assert multischur_det((), []) == Polynomial.const(1)


class TestPfBC:
    @pytest.mark.parametrize("lam", [(1,), (2, 1), (3, 1), (4, 2, 1), (3, 2, 1)])
    def test_plain_series_gives_basis(self, lam):
        got = multischur_pf(lam, [Q_SERIES] * len(lam))
        assert got == GammaElement.basis(lam)

    def test_skew_check(self):
        with pytest.raises(SkewCheckFailed):
            multischur_pf((1,), [q_times(1 + tvar(1))])

    def test_alternating_indices(self):
        c1 = q_times(1 + tvar(1))
        c2 = Q_SERIES
        a = multischur_pf((3, 1), [c1, c2], check=False)
        b = multischur_pf((1, 3), [c2, c1], check=False)
        assert a == -b

    def test_equal_indices_vanish(self):
        c = q_times(1 + tvar(1))
        assert not multischur_pf((2, 2), [c, c], check=False)
        assert not multischur_pf((3, 3, 2, 1), [c, c, c, Q_SERIES], check=False)

    def test_redundancy_invariance(self):
        # consecutive indices sharing a series absorb a (1+z) factor
        c = q_times(1 + tvar(1))
        base = multischur_pf((3, 2), [c, c])
        fat = multischur_pf(
            (3, 2), [c.times(1 + Polynomial.variable("z", 1)), c], check=False
        )
        assert base == fat

    def test_redundancy_needs_staircase(self):
        # with a gap between the indices the extra factor does change it
        c = q_times(1 + tvar(1))
        base = multischur_pf((4, 2), [c, c])
        fat = multischur_pf(
            (4, 2), [c.times(1 + Polynomial.variable("z", 1)), c], check=False
        )
        assert base != fat

    def test_leading_term(self):
        c1 = q_times((1 + tvar(1)) * (1 + tvar(2)))
        c2 = q_times(1 + tvar(1))
        got = multischur_pf((3, 2), [c1, c2])
        assert got.coefficient((3, 2)) == Polynomial.const(1)
        # everything lives in a single degree
        assert got == got.graded_part(5)


class TestPfD:
    def test_index_zero_alone(self):
        got = multischur_pf_d((0,), [(Polynomial.const(1), Q_SERIES)])
        assert got == GammaElement.of(2)

    def test_single_index(self):
        # half of this should be P_2 + e_1 P_1 + e_2
        got = multischur_pf_d((2,), [(E2, q_times(E2))])
        e1 = tvar(1) + tvar(2)
        e2 = tvar(1) * tvar(2)
        expect = GammaElement({(2,): 1, (1,): e1, (): 2 * e2})
        assert got == expect

    def test_k_zero_pair(self):
        # the (k, 0) entry drops the degree-k multiplier coefficient
        got = multischur_pf_d((2, 0), [(E2, q_times(E2)), (Polynomial.const(1), Q_SERIES)])
        e1 = tvar(1) + tvar(2)
        expect = GammaElement({(2,): 2, (1,): 2 * e1})
        assert got == expect

    def test_reduces_to_plain_pfaffian(self):
        c = 1 + tvar(1)
        pair = (c, q_times(c))
        got = multischur_pf_d((4, 2), [pair, pair])
        plain = multischur_pf((4, 2), [q_times(c), q_times(c)])
        assert got == plain

    def test_star_relation_guard(self):
        good = (1 + tvar(1), q_times(1 + tvar(1)))
        bad = (1 + tvar(2), q_times((1 + tvar(2)) * (1 - tvar(1))))
        with pytest.raises((StarRelationFailed, DivisibilityFailed)):
            multischur_pf_d((3, 1), [good, bad])

    def test_divisibility_guard(self):
        with pytest.raises(DivisibilityFailed):
            multischur_pf_d(
                (3, 1),
                [(1 + tvar(1), q_times(1 + tvar(1))), (1 + tvar(2), q_times(1 + tvar(2)))],
            )

    def test_degree_guard(self):
        with pytest.raises(SkewCheckFailed):
            multischur_pf_d((1,), [(E2, q_times(E2))])


@settings(max_examples=15, deadline=None)
@given(
    st.integers(min_value=2, max_value=5),
    st.integers(min_value=1, max_value=3),
)
def test_pf_pair_matches_basis_shift(a, gap):
    # Pf with plain series on any strict pair reproduces the basis symbol
    lam = (a + gap, a)
    assert multischur_pf(lam, [Q_SERIES, Q_SERIES]) == GammaElement.basis(lam)
