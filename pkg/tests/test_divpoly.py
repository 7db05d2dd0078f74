import random
from fractions import Fraction
from math import comb

import pytest

from hklattice import DivisorPolynomial, InputError, linear_power, monomials_of_degree
from hklattice.divpoly import poly_to_row, sym_dimension


def lin(coeffs):
    n = len(coeffs)
    return DivisorPolynomial(n, {tuple(1 if j == i else 0 for j in range(n)): Fraction(c)
                                 for i, c in enumerate(coeffs) if c})


def test_linear_power_binomials():
    assert linear_power([Fraction(1), Fraction(1)], 2) == DivisorPolynomial(
        2, {(2, 0): 1, (1, 1): 2, (0, 2): 1})
    assert linear_power([Fraction(1), Fraction(-1)], 3) == DivisorPolynomial(
        2, {(3, 0): 1, (2, 1): -3, (1, 2): 3, (0, 3): -1})


def test_linear_power_matches_repeated_multiplication():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.randint(1, 4)
        k = rng.randint(0, 5)
        coeffs = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
        base = lin(coeffs)
        expected = DivisorPolynomial(n, {tuple([0] * n): Fraction(1)})
        for _ in range(k):
            expected = expected * base
        assert linear_power(coeffs, k) == expected


def test_monomials_of_degree():
    monos = monomials_of_degree(3, 2)
    assert len(monos) == sym_dimension(3, 2) == comb(4, 2)
    assert len(set(monos)) == len(monos)
    assert all(sum(m) == 2 for m in monos)
    assert monomials_of_degree(2, -1) == []


def test_degree_and_homogeneity():
    p = DivisorPolynomial(2, {(2, 0): Fraction(1), (1, 1): Fraction(2)})
    assert p.degree() == 2
    mixed = DivisorPolynomial(2, {(2, 0): Fraction(1), (1, 0): Fraction(1)})
    with pytest.raises(InputError, match="degree"):
        mixed.degree()
    assert DivisorPolynomial.zero(2).degree() is None


def test_zero_coefficients_pruned():
    p = DivisorPolynomial(2, {(1, 0): Fraction(0), (0, 1): Fraction(2)})
    assert list(p.terms) == [(0, 1)]
    q = p - p
    assert q.is_zero()


def test_mul_monomial():
    p = lin([1, 1])
    shifted = p.mul_monomial((1, 0))
    assert shifted == DivisorPolynomial(2, {(2, 0): 1, (1, 1): 1})


def test_json_round_trip():
    p = DivisorPolynomial(2, {(2, 0): Fraction(1, 2), (0, 2): Fraction(-3)})
    assert DivisorPolynomial.from_json(p.to_json(), 2) == p
    with pytest.raises(InputError, match="degree"):
        DivisorPolynomial.from_json({"degree": 3, "terms": [{"exps": [2, 0], "coef": "1"}]}, 2)


def test_poly_to_row():
    monos = monomials_of_degree(2, 2)
    index = {m: i for i, m in enumerate(monos)}
    p = DivisorPolynomial(2, {(2, 0): Fraction(1), (0, 2): Fraction(5)})
    row = poly_to_row(p, index)
    assert row[index[(2, 0)]] == 1
    assert row[index[(0, 2)]] == 5
    assert row[index[(1, 1)]] == 0
