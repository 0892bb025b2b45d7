import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lfoldq.errors import InputError
from lfoldq.ntkernel import (
    DirichletCharacterD,
    FactoredInteger,
    divisor_count,
    divisors,
    factorize,
    is_fundamental_discriminant,
    kronecker,
    omega,
    sieve_primes,
    squarefree_sieve,
)
from oracles import (
    divisors_brute,
    kronecker_via_factorization,
    squarefree_naive,
    trial_division_primes,
)

H1_DISCRIMINANTS = (-3, -4, -7, -8, -11, -19, -43, -67, -163)


class TestSievePrimes:
    def test_hand_checked(self):
        assert sieve_primes(10) == [2, 3, 5, 7]
        assert sieve_primes(2) == [2]
        assert sieve_primes(1) == []

    def test_against_trial_division(self):
        assert sieve_primes(30) == trial_division_primes(30)
        assert len(sieve_primes(30)) == 10 and sieve_primes(30)[-1] == 29
        assert sieve_primes(2000) == trial_division_primes(2000)


class TestFactorize:
    def test_examples(self):
        assert factorize(12).factors == ((2, 2), (3, 1))
        assert factorize(1).factors == ()
        assert factorize(9973).factors == ((9973, 1),)

    def test_zero_rejected(self):
        with pytest.raises(InputError):
            factorize(0)

    @given(st.integers(min_value=1, max_value=10**6))
    @settings(max_examples=200, deadline=None)
    def test_roundtrip(self, n):
        fi = factorize(n)
        prod = 1
        for p, e in fi.factors:
            prod *= p**e
        assert prod == n

    def test_malformed_rejected(self):
        with pytest.raises(InputError):
            FactoredInteger(12, ((3, 1), (2, 2)))  # wrong order


def test_omega():
    assert omega(1) == 0
    assert omega(12) == 2
    assert omega(30) == 3


def test_squarefree_sieve_against_naive():
    table = squarefree_sieve(10**4)
    assert table[1] and not table[12] and table[30]
    for n in range(1, 10**4 + 1):
        assert table[n] == squarefree_naive(n), n


def test_squarefree_sieve_matches_factorization():
    table = squarefree_sieve(10**5)
    idx = np.random.default_rng(3).integers(1, 10**5, size=300)
    for n in map(int, idx):
        assert bool(table[n]) == factorize(n).is_squarefree


class TestDivisors:
    def test_examples(self):
        assert divisors(1) == [1]
        assert divisors(10) == [1, 2, 5, 10]
        assert len(divisors(36)) == 9
        assert divisors(36) == divisors_brute(36)

    @given(st.integers(min_value=1, max_value=5000))
    @settings(max_examples=100, deadline=None)
    def test_brute_force(self, n):
        assert divisors(n) == divisors_brute(n)

    def test_count_consistency(self):
        for n in range(1, 2000):
            assert len(divisors(n)) == divisor_count(n)


class TestKronecker:
    def test_examples(self):
        assert kronecker(-4, 2) == 0
        assert kronecker(-4, 3) == -1
        assert kronecker(-3, 7) == 1

    def test_n_zero_rejected(self):
        with pytest.raises(InputError):
            kronecker(-4, 0)

    def test_against_legendre_oracle(self):
        for D in (-3, -4, -7, -8, -20, -23, -15, 5, 12):
            for n in range(1, 400):
                assert kronecker(D, n) == kronecker_via_factorization(D, n), (D, n)

    @given(
        st.sampled_from(H1_DISCRIMINANTS + (-20, -23, -15)),
        st.integers(min_value=1, max_value=10**4),
        st.integers(min_value=1, max_value=10**4),
    )
    @settings(max_examples=300, deadline=None)
    def test_complete_multiplicativity(self, D, m, n):
        assert kronecker(D, m * n) == kronecker(D, m) * kronecker(D, n)

    @pytest.mark.parametrize("D", H1_DISCRIMINANTS)
    def test_periodicity(self, D):
        for n in range(1, 10 * abs(D) + 1):
            assert kronecker(D, n) == kronecker(D, n + abs(D))

    @pytest.mark.parametrize("D", H1_DISCRIMINANTS)
    def test_vanishes_exactly_on_divisors_of_D(self, D):
        for p in sieve_primes(200):
            assert (kronecker(D, p) == 0) == (abs(D) % p == 0)


def test_character_interface():
    chi = DirichletCharacterD(-4)
    assert [chi(n) for n in range(1, 9)] == [1, 0, -1, 0, 1, 0, -1, 0]
    with pytest.raises(InputError):
        DirichletCharacterD(-5)  # not 0 or 1 mod 4
    with pytest.raises(InputError):
        DirichletCharacterD(4)


def test_fundamental_discriminants():
    for D in H1_DISCRIMINANTS + (-15, -20, -23, -24):
        assert is_fundamental_discriminant(D), D
    for D in (-9, -12, -16, -18, -25, -27, -28):
        assert not is_fundamental_discriminant(D), D
