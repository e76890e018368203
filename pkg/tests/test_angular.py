import math

import pytest
from hypothesis import given, settings, strategies as st

from raman.angular import (
    HalfInt,
    HalfIntError,
    parity,
    threej_twice,
    triangle_ok,
    wigner_3j,
    wigner_6j,
)

H = HalfInt.parse

class TestHalfInt:
    @pytest.mark.parametrize("text,twice", [("3/2", 3), ("1.5", 3), ("2", 4), ("0", 0), (" 7/2 ", 7), ("-1/2", -1)])
    def test_parse(self, text, twice):
        assert HalfInt.parse(text).twice_value == twice

    @pytest.mark.parametrize("text", ["1/3", "0.25", "abc", "", "1/0"])
    def test_parse_rejects(self, text):
        with pytest.raises(HalfIntError):
            HalfInt.parse(text)

    def test_arithmetic_and_text(self):
        assert H("5/2") + H("1/2") == H("3")
        assert H("1/2") - H("3/2") == H("-1")
        assert abs(H("-3/2")) == H("3/2")
        assert str(H("5/2")) == "5/2"
        assert str(H("3")) == "3"
        assert float(H("7/2")) == 3.5
        assert H("3/2").multiplicity == 4

    def test_projections(self):
        assert [m.twice_value for m in H("3/2").projections()] == [-3, -1, 1, 3]
        assert list(HalfInt.span(H("2"), H("1"))) == []

    def test_parity_requires_integer_exponent(self):
        assert parity(4) == 1
        assert parity(2) == -1
        assert parity(-2) == -1
        with pytest.raises(HalfIntError):
            parity(3)


class TestTriangle:
    def test_known_cases(self):
        assert triangle_ok(H("1"), H("1"), H("2"))
        assert triangle_ok(H("1/2"), H("1"), H("3/2"))
        assert not triangle_ok(H("1"), H("1"), H("3"))
        # integer sum required
        assert not triangle_ok(H("1/2"), H("1"), H("1"))


class TestThreeJ:
    def test_known_values(self):
        assert wigner_3j(H("1"), H("1"), H("0"), H("0"), H("0"), H("0")) == pytest.approx(-1 / math.sqrt(3), abs=1e-12)
        assert wigner_3j(H("1"), H("1"), H("1"), H("-1"), H("0"), H("1")) == pytest.approx(1 / math.sqrt(6), abs=1e-12)
        assert wigner_3j(H("1/2"), H("1/2"), H("1"), H("1/2"), H("-1/2"), H("0")) == pytest.approx(
            1 / math.sqrt(6), abs=1e-12
        )

    def test_selection_rules_give_exact_zero(self):
        # m sum
        assert wigner_3j(H("1"), H("1"), H("1"), H("1"), H("1"), H("0")) == 0.0
        # triangle
        assert wigner_3j(H("1"), H("1"), H("3"), H("0"), H("0"), H("0")) == 0.0
        # |m| > j
        assert threej_twice(2, 2, 0, 4, -4, 0) == 0.0

    def test_mismatched_projection_raises(self):
        with pytest.raises(HalfIntError):
            wigner_3j(H("1"), H("1"), H("1"), H("1/2"), H("-1/2"), H("0"))

    def test_orthogonality(self):
        # fixed m3: sum over m1 of (2j3+1) (j1 j2 j3; m1 m2 m3)^2 = 1
        for tj1 in range(0, 13):
            for tj2 in range(0, 13):
                for tj3 in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2):
                    if tj3 > 12:
                        continue
                    for tm3 in range(-tj3, tj3 + 1, 2):
                        total = 0.0
                        for tm1 in range(-tj1, tj1 + 1, 2):
                            tm2 = -tm1 - tm3
                            if abs(tm2) <= tj2:
                                total += threej_twice(tj1, tj2, tj3, tm1, tm2, tm3) ** 2
                        assert (tj3 + 1) * total == pytest.approx(1.0, abs=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(
        tj1=st.integers(0, 12),
        tj2=st.integers(0, 12),
        data=st.data(),
    )
    def test_column_swap_phase(self, tj1, tj2, data):
        tj3 = data.draw(st.sampled_from(range(abs(tj1 - tj2), tj1 + tj2 + 1, 2)))
        tm1 = data.draw(st.sampled_from(range(-tj1, tj1 + 1, 2)))
        tm2 = data.draw(st.sampled_from(range(-tj2, tj2 + 1, 2)))
        tm3 = -tm1 - tm2
        if abs(tm3) > tj3:
            return
        forward = threej_twice(tj1, tj2, tj3, tm1, tm2, tm3)
        swapped = threej_twice(tj2, tj1, tj3, tm2, tm1, tm3)
        assert swapped == pytest.approx(parity(tj1 + tj2 + tj3) * forward, abs=1e-12)


class TestSixJ:
    def test_all_ones(self):
        one = H("1")
        assert wigner_6j(one, one, one, one, one, one) == pytest.approx(1 / 6, abs=1e-12)

    def test_zero_argument_closed_form(self):
        value = wigner_6j(H("0"), H("1"), H("1"), H("3/2"), H("1/2"), H("1/2"))
        assert value == pytest.approx(-1 / math.sqrt(6), abs=1e-12)

    def test_failed_triad_is_zero(self):
        assert wigner_6j(H("1"), H("1"), H("3"), H("1"), H("1"), H("1")) == 0.0

    def test_negative_argument_raises(self):
        with pytest.raises(HalfIntError):
            wigner_6j(H("-1"), H("1"), H("1"), H("1"), H("1"), H("1"))

    @pytest.mark.parametrize("ta,tb,tc,td", [(2, 2, 2, 2), (1, 3, 2, 4), (3, 3, 1, 1), (4, 2, 3, 5), (5, 5, 3, 3)])
    def test_orthogonality(self, ta, tb, tc, td):
        # sum_x (2x+1)(2p+1) {a b x; c d p}{a b x; c d q} = delta_pq
        xs = range(abs(ta - tb), ta + tb + 1, 2)
        ps = [tp for tp in range(0, 13) if (ta + td + tp) % 2 == 0]
        for tp in ps:
            for tq in ps:
                total = sum(
                    (tx + 1) * (tp + 1)
                    * wigner_6j(HalfInt(ta), HalfInt(tb), HalfInt(tx), HalfInt(tc), HalfInt(td), HalfInt(tp))
                    * wigner_6j(HalfInt(ta), HalfInt(tb), HalfInt(tx), HalfInt(tc), HalfInt(td), HalfInt(tq))
                    for tx in xs
                )
                allowed = triangle_ok(HalfInt(ta), HalfInt(td), HalfInt(tp)) and triangle_ok(
                    HalfInt(tc), HalfInt(tb), HalfInt(tp)
                )
                expected = 1.0 if tp == tq and allowed else 0.0
                assert total == pytest.approx(expected, abs=1e-12)

    @settings(max_examples=150, deadline=None)
    @given(st.lists(st.integers(0, 8), min_size=6, max_size=6))
    def test_column_permutation_invariance(self, args):
        j1, j2, j3, j4, j5, j6 = (HalfInt(t) for t in args)
        value = wigner_6j(j1, j2, j3, j4, j5, j6)
        assert wigner_6j(j2, j1, j3, j5, j4, j6) == pytest.approx(value, abs=1e-12)
        assert wigner_6j(j2, j3, j1, j5, j6, j4) == pytest.approx(value, abs=1e-12)
        # upper/lower exchange in two columns
        assert wigner_6j(j4, j5, j3, j1, j2, j6) == pytest.approx(value, abs=1e-12)
