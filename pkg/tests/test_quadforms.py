import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lfoldq.errors import InputError
from lfoldq.quadforms import (
    QuadraticForm,
    class_set,
    r_star,
    r_star_table,
    reduce_form,
    representation_counts,
    unit_count,
    verify_rep_formula,
)
from oracles import rep_count_brute, reduce_brute

H1_DISCRIMINANTS = (-3, -4, -7, -8, -11, -19, -43, -67, -163)


def principal(D):
    b = abs(D) % 2
    return QuadraticForm(1, b, (b * b - D) // 4)


class TestReduce:
    def test_examples(self):
        assert reduce_form(QuadraticForm(2, 2, 3)) == QuadraticForm(2, 2, 3)
        assert reduce_form(QuadraticForm(1, 5, 7)) == QuadraticForm(1, 1, 1)
        assert reduce_form(QuadraticForm(1, 0, 1)) == QuadraticForm(1, 0, 1)

    def test_rejects_indefinite(self):
        with pytest.raises(InputError):
            reduce_form(QuadraticForm(1, 5, 1))  # D = 21 > 0
        with pytest.raises(InputError):
            reduce_form(QuadraticForm(-1, 0, -1))

    def test_rejects_imprimitive(self):
        with pytest.raises(InputError):
            reduce_form(QuadraticForm(2, 2, 2))

    @given(
        st.integers(min_value=1, max_value=30),
        st.integers(min_value=-60, max_value=60),
        st.integers(min_value=1, max_value=60),
    )
    @settings(max_examples=300, deadline=None)
    def test_against_unit_step_oracle(self, a, b, c):
        Q = QuadraticForm(a, b, c)
        if not (Q.is_positive_definite() and Q.is_primitive()):
            return
        R = reduce_form(Q)
        assert (R.a, R.b, R.c) == reduce_brute(a, b, c)
        assert R.is_reduced()
        assert R.discriminant == Q.discriminant
        assert reduce_form(R) == R  # idempotent


class TestClassSet:
    def test_examples(self):
        assert [str(f) for f in class_set(-4).forms] == ["(1,0,1)"]
        cs = class_set(-23)
        assert cs.h == 3
        assert set(cs.forms) == {
            QuadraticForm(1, 1, 6),
            QuadraticForm(2, 1, 3),
            QuadraticForm(2, -1, 3),
        }
        assert class_set(-163).h == 1
        assert class_set(-3).h == 1

    def test_h1_list(self):
        for D in H1_DISCRIMINANTS:
            assert class_set(D).h == 1, D

    def test_known_class_numbers(self):
        # classical table
        for D, h in [(-15, 2), (-20, 2), (-24, 2), (-47, 5), (-71, 7), (-84, 4)]:
            assert class_set(D).h == h, D

    def test_all_reduced_primitive(self):
        for D in (-23, -47, -84, -163, -400 + 1):
            cs = class_set(D)
            for f in cs.forms:
                assert f.is_reduced() and f.is_primitive()
                assert f.discriminant == D

    def test_rejects_bad_discriminant(self):
        with pytest.raises(InputError):
            class_set(5)
        with pytest.raises(InputError):
            class_set(-6)  # 2 mod 4


def test_unit_count():
    assert unit_count(-3) == 6
    assert unit_count(-4) == 4
    assert unit_count(-8) == 2
    with pytest.raises(InputError):
        unit_count(4)


class TestRepresentationCounts:
    def test_sum_of_two_squares(self):
        r = representation_counts(QuadraticForm(1, 0, 1), 5)
        assert list(r[1:6]) == [4, 4, 0, 4, 8]

    def test_brute_force_small(self):
        for Q in (QuadraticForm(1, 0, 1), QuadraticForm(2, 1, 3), QuadraticForm(1, 1, 1)):
            r = representation_counts(Q, 50)
            for n in range(1, 51):
                assert r[n] == rep_count_brute(Q.a, Q.b, Q.c, n), (str(Q), n)

    def test_not_represented_is_zero(self):
        r = representation_counts(QuadraticForm(1, 0, 1), 100)
        assert r[3] == 0 and r[7] == 0 and r[21] == 0

    def test_big_coefficient_form_exact(self):
        # exercises the big-integer fallback guard path
        Q = QuadraticForm(1, 1, 10**17)
        r = representation_counts(Q, 10)
        assert r[1] == 2  # (+-1, 0)


class TestRStar:
    def test_examples(self):
        assert r_star(-4, 1) == 1
        assert r_star(-4, 10) == 2
        assert r_star(-4, 3) == 0

    def test_table_matches_scalar(self):
        t = r_star_table(-23, 500)
        for n in range(1, 501):
            assert t[n] == r_star(-23, n)

    def test_divisor_sum_definition(self):
        from lfoldq.ntkernel import divisors, kronecker

        for D in (-4, -3, -23, -20):
            for n in range(1, 200):
                assert r_star(D, n) == sum(kronecker(D, d) for d in divisors(n))


class TestRepFormula:
    def test_h1_pass(self):
        rep = verify_rep_formula(QuadraticForm(1, 0, 1), 10**4)
        assert rep.status == "pass"
        rep = verify_rep_formula(QuadraticForm(1, 1, 1), 10**3)
        assert rep.status == "pass"

    def test_not_applicable_for_h3(self):
        rep = verify_rep_formula(QuadraticForm(2, 1, 3), 100)
        assert rep.status == "formula not applicable"
        assert rep.h == 3

    @pytest.mark.parametrize("D", H1_DISCRIMINANTS)
    def test_all_h1_discriminants(self, D):
        rep = verify_rep_formula(principal(D), 10**4)
        assert rep.status == "pass", D


def test_class_set_total_representations_depend_only_on_D():
    # sum over the class set equals w_D * rstar, checked by enumeration
    for D in (-23, -20, -15):
        cs = class_set(D)
        total = np.zeros(201, dtype=np.int64)
        for Q in cs.forms:
            total += representation_counts(Q, 200)
        rs = r_star_table(D, 200)
        assert np.array_equal(total[1:], cs.w * rs[1:]), D
