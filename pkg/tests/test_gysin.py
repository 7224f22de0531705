import itertools

import pytest

from vexpf.polycore import Dyadic, Polynomial
from vexpf.gamma import GammaElement, GeneratorSeries
from vexpf.multischur import multischur_pf_d
from vexpf.gysin import (
    IndexedOperator,
    LaurentElement,
    RelationViolated,
    WindowTooSmall,
    check_star_relations,
    default_a2_data,
    epsilon,
    f_index,
    f_index_identity,
    f_pair,
    f_tilde_border,
    f_tilde_pair,
    lemma_A1_check,
    prop_A1_check,
    prop_A2_check,
    pushforward_compose,
    plain_pushforward_check,
    sgn,
)


def h(i, e=1, w=8):
    return LaurentElement.h_power(i, e, w)


def u(i, e=1, w=8):
    return LaurentElement.u_power(i, e, w)


class TestLaurent:
    def test_window_truncation(self):
        a = h(1, 2, w=3)
        assert not a * a  # exponent 4 leaves the window
        assert a * h(1, -2, w=3) == LaurentElement.const(1, 3)

    def test_cancelling_exponents_merge(self):
        # h1 * h1^-1 must land on the constant monomial, not a phantom h1^0
        prod = h(1) * h(1, -1)
        assert prod == LaurentElement.const(1)
        assert (prod - LaurentElement.const(1)).terms == {}

    def test_zeta_kills_positive_powers(self):
        e = h(1) * h(2, -1) + u(1) * LaurentElement.const(3)
        img = e.zeta({1})
        assert img == u(1) * LaurentElement.const(3)

    def test_zeta_rejects_negative_powers(self):
        with pytest.raises(ValueError):
            h(1, -1).zeta({1})

    def test_restrict(self):
        e = h(1, 3) + h(1, 1)
        assert e.restrict(2) == h(1, 1)


class TestFPair:
    def test_skew(self):
        assert not (f_pair(1, 2, 6) + f_pair(2, 1, 6))

    def test_degree_one_truncation(self):
        assert f_pair(1, 2, 1) == LaurentElement.const(1, 1) - (
            h(1, 1, 1) * h(2, -1, 1) * LaurentElement.const(2, 1)
        )

    def test_singletons_trivial(self):
        assert f_index((5,), 4) == LaurentElement.const(1, 4)
        assert f_index((), 4) == LaurentElement.const(1, 4)

    @pytest.mark.parametrize("I", [(1, 2), (1, 2, 3), (1, 2, 3, 4), (2, 3, 5, 6)])
    def test_product_identity(self, I):
        assert f_index_identity(I, 8)

    def test_window_guard(self):
        with pytest.raises(WindowTooSmall):
            f_index_identity((1, 2, 3, 4), 5)


class TestSigns:
    def test_empty_subset(self):
        assert sgn((1, 2, 3), ()) == 1

    def test_first_element_is_odd(self):
        assert epsilon(2, (2, 5, 9)) == -1
        assert epsilon(5, (2, 5, 9)) == 1

    def test_lemma_small(self):
        assert lemma_A1_check((1, 2, 3))

    def test_lemma_exhaustive_to_six(self):
        for s in range(7):
            for K in itertools.combinations(range(1, 7), s):
                assert lemma_A1_check(K), K


class TestOperators:
    def test_zeta_composition(self):
        a = IndexedOperator({frozenset({1}): LaurentElement.const(1)})
        b = IndexedOperator({frozenset({2}): LaurentElement.const(1)})
        ab = a * b
        assert set(ab.terms) == {frozenset({1, 2})}
        e = h(1) + h(2) + h(3)
        assert ab.apply(e) == h(3)

    def test_composition_moves_coefficients_through_zeta(self):
        # (zeta_1) . (h_1 + h_2) = h_2 zeta_1, not (h_1 + h_2) zeta_1
        a = IndexedOperator({frozenset({1}): LaurentElement.const(1)})
        b = IndexedOperator.scalar(h(1) + h(2))
        assert (a * b).terms == {frozenset({1}): h(2)}

    def test_deformed_entry_skew(self):
        lam = (2, 1)
        assert f_tilde_pair(2, 1, lam) == -f_tilde_pair(1, 2, lam)

    def test_border_on_one(self):
        lam = (3,)
        got = f_tilde_border(1, lam).apply(LaurentElement.const(1))
        assert got == h(1, 3) + u(1, 3)


class TestPropA1:
    def test_single_index(self):
        assert prop_A1_check((3,), (1,))

    def test_pair(self):
        assert prop_A1_check((2, 1), (1, 2))

    def test_triple(self):
        monos = [
            LaurentElement.const(1, 11),
            h(1, 1, 11),
            h(1, 1, 11) * h(2, 1, 11) * u(3, 1, 11),
        ]
        assert prop_A1_check((3, 2, 1), (1, 2, 3), monomials=monos, window=11)

    def test_sub_index_set(self):
        assert prop_A1_check((4, 2, 1), (1, 3))

    def test_default_monomials_cover_ten(self):
        from vexpf.gysin import _default_monomials

        assert len(_default_monomials((1, 2, 3), 10)) >= 10

    def test_window_guard(self):
        with pytest.raises(WindowTooSmall):
            prop_A1_check((3, 2, 1), (1, 2, 3), window=4)


class TestPropA2:
    def test_r1_direct(self):
        # one step: half the border entry d_l + g_l
        lam = (2,)
        pairs = default_a2_data(lam)
        lhs = pushforward_compose(lam, pairs)
        g, d = pairs[0]
        from vexpf.gamma import series_coeff

        expect = (series_coeff(d, 2) + GammaElement.of(g.part(2))).scale(Dyadic(1, 1))
        assert lhs == expect

    @pytest.mark.parametrize("lam", [(1,), (2, 0), (2, 1), (3, 1), (3, 2, 0), (3, 2, 1)])
    def test_pfaffian_equality(self, lam):
        assert prop_A2_check(lam)

    def test_relation_guard(self):
        lam = (2, 1)
        pairs = default_a2_data(lam)
        g, d = pairs[0]
        bad = (g * (1 + Polynomial.variable("t", 3)), d)
        with pytest.raises(RelationViolated):
            prop_A2_check(lam, [bad, pairs[1]])

    def test_star_relation_passes_on_default_data(self):
        pairs = default_a2_data((3, 1))
        check_star_relations(pairs, 4)


class TestPlainPushforward:
    def test_simple_shift(self):
        from vexpf.gamma import Q_SERIES

        assert plain_pushforward_check((2,), [Q_SERIES], (1,))
        assert plain_pushforward_check((3, 1), [Q_SERIES, Q_SERIES], (0, 1))

    def test_matches_type_c_pipeline(self):
        from vexpf.triples import Triple, lambda_of
        from vexpf.schubert import _steps, _ones_product

        t = Triple((1, 2), (2, 1), (2, 1), "C")
        lam = lambda_of(t)
        series = [
            GeneratorSeries(True, _ones_product("x", p - 1) * _ones_product("y", q - 1))
            for p, q in _steps(t)
        ]
        for m in [(0, 0), (1, 0), (0, 1), (2, 1)]:
            assert plain_pushforward_check(lam, series, m), m
