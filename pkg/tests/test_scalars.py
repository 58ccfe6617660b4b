"""Exactness, lattice membership, genericity, and the parameter record."""

from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cherednik_lab.scalars import (
    NonGenericError,
    ParameterSet,
    format_scalar,
    generic_violation,
    in_lattice,
    is_generic,
    mean,
    parse_scalar,
    scalar,
)

rationals = st.fractions(
    min_value=-100, max_value=100, max_denominator=40
)


def lattice_oracle(x: F, kappa: F, bound: int = 60) -> bool:
    # brute force: x = i + kappa*j for some integers i, |j| <= bound; the
    # bound exceeds every kappa denominator the strategy can produce
    return any(
        (x - kappa * j).denominator == 1 for j in range(-bound, bound + 1)
    )


def test_in_lattice_examples():
    assert in_lattice(F(3), F(5, 2)) is True
    # Z + (5/2)Z = (1/2)Z and 1/3 is not a half-integer
    assert in_lattice(F(1, 3), F(5, 2)) is False
    # 7/2 = 1 + 5/2
    assert in_lattice(F(7, 2), F(5, 2)) is True


@given(rationals, st.fractions(min_value=-10, max_value=10, max_denominator=6))
def test_in_lattice_matches_bounded_search(x, kappa):
    assert in_lattice(x, kappa) == lattice_oracle(x, kappa)


@given(rationals, st.fractions(min_value=-10, max_value=10, max_denominator=6))
def test_in_lattice_translation_invariance(x, kappa):
    assert in_lattice(x, kappa) == in_lattice(x + 1, kappa)
    assert in_lattice(x, kappa) == in_lattice(x + kappa, kappa)


@given(rationals, rationals, rationals)
def test_field_axioms_exact(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c


def test_is_generic_examples():
    assert is_generic((F(0), F(1, 3)), F(5, 2)) is True
    assert is_generic((F(0), F(1)), F(5, 2)) is False
    assert is_generic((F(0),), F(7, 5)) is True


def test_generic_violation_reports_pair():
    assert generic_violation((F(0), F(1, 3), F(1, 3)), F(5, 2)) == (2, 3)


def test_scalar_serialization():
    assert parse_scalar("5/2") == F(5, 2)
    assert parse_scalar("-3") == F(-3)
    assert format_scalar(F(5, 2)) == "5/2"
    assert format_scalar(F(4, 2)) == "2"
    assert scalar("7/3") == F(7, 3)


def test_parameter_set_derivations():
    ps = ParameterSet.from_nu(F(5, 2), (F(0), F(1, 3)), (1, 1))
    assert ps.lam == (F(1), F(4, 3))
    assert ps.nu == (1, 1)
    assert ps.ell == F(1, 2)
    assert ps.shift == F(-1, 6)
    assert ps.generic is True
    assert mean(ps.mu) == F(1, 6)


def test_parameter_set_validation():
    with pytest.raises(ValueError):
        ParameterSet(2, 2, F(1), (F(0), F(0)), (F(1), F(2, 3)))
    with pytest.raises(ValueError):
        ParameterSet(2, 3, F(1), (F(0), F(0)), (F(1), F(1)))
    with pytest.raises(ValueError):
        ParameterSet(2, 2, F(1), (F(0), F(0), F(0)), (F(1), F(1)))


def test_require_generic():
    bad = ParameterSet.from_nu(F(5, 2), (F(0), F(1, 2)), (1, 1))
    with pytest.raises(NonGenericError):
        bad.require_generic()
    ParameterSet.from_nu(F(5, 2), (F(0), F(1, 3)), (1, 1)).require_generic()
