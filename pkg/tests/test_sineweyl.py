import cmath

import pytest

from sylvester.cyclo import zeta_pow
from sylvester.records import MATCH
from sylvester.sineweyl import (
    HALF_ANGLE,
    PRINTED,
    build_J,
    j_rank,
    sine_coefficients,
    sine_summary,
    traceless_closed,
    verify_weyl,
)


@pytest.mark.parametrize("n", range(2, 9))
def test_weyl(n):
    assert verify_weyl(n).status == MATCH


@pytest.mark.parametrize("n,d", [(3, 1), (4, 3), (5, -2), (6, 7)])
def test_sine_coefficient_is_exact_sine(n, d):
    c = sine_coefficients(n, d)
    assert abs(c[HALF_ANGLE].to_complex() - (-2j) * cmath.sin(cmath.pi * d / n)) < 1e-9
    assert abs(c[PRINTED].to_complex() - (-2j) * cmath.sin(2 * cmath.pi * d / n)) < 1e-9


def test_j_is_unitary_monomial():
    J = build_J(3, (1, 2)).matrix
    entries = list(J.nonzero())
    assert len(entries) == 3
    # every entry is a single root of unity
    for _, v in entries:
        assert any(zeta_pow(6, e) == v for e in range(6))


@pytest.mark.parametrize("n", range(2, 6))
def test_half_angle_convention_wins(n):
    s = sine_summary(n)
    assert s.pairs == n**4
    assert s.half_angle_matches == s.pairs
    assert s.printed_matches < s.pairs
    assert s.winner == HALF_ANGLE
    assert s.center_ok
    assert s.proportional_to_reduced == s.pairs


@pytest.mark.parametrize("n", range(2, 6))
def test_j_spans_gl(n):
    assert j_rank(n) == n * n
    assert traceless_closed(n)
