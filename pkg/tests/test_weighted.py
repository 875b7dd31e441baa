import math
from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from laplaceq.errors import ParseError
from laplaceq.weighted import (
    TrianglePhases,
    admissible_phase_set,
    check_triangle_condition,
    grid_scan,
    parse_phase,
    parse_phases,
)

PI = math.pi


def test_examples():
    assert check_triangle_condition(TrianglePhases(0, 0, 0)).satisfied
    assert check_triangle_condition(TrianglePhases(0, PI, PI)).satisfied
    bad = check_triangle_condition(TrianglePhases(PI, PI, PI))
    assert not bad.satisfied
    assert bad.residuals == pytest.approx((PI, PI, PI))
    assert not check_triangle_condition(TrianglePhases(PI / 2, PI / 2, PI)).satisfied


def test_wraps_into_range():
    p = TrianglePhases(-PI, 3 * PI, 2 * PI)
    assert p.as_tuple() == pytest.approx((PI, PI, 0.0))
    assert check_triangle_condition(p).satisfied


def test_admissible_set():
    got = {tuple(round(w / PI) for w in p.as_tuple()) for p in admissible_phase_set()}
    assert got == {(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)}
    # each weight is the product of the other two
    for p in admissible_phase_set():
        z = p.weights()
        for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            assert abs(z[i] * z[j] - z[k]) < 1e-12


def integer_oracle(steps):
    # i + j == k (mod steps) for all three rotations, in exact integer arithmetic
    return {
        (i, j, k)
        for i, j, k in product(range(steps), repeat=3)
        if (i + j - k) % steps == 0 and (j + k - i) % steps == 0 and (k + i - j) % steps == 0
    }


@pytest.mark.parametrize("steps", [4, 6, 12, 36])
def test_grid_scan_matches_integer_oracle(steps):
    got = {tuple(row) for row in grid_scan(steps).tolist()}
    assert got == integer_oracle(steps)


def test_grid_scan_odd_steps_only_origin():
    assert grid_scan(9).tolist() == [[0, 0, 0]]


angles = st.floats(-20, 20, allow_nan=False)


@given(angles, angles, angles)
def test_cyclic_symmetry(a, b, c):
    r1 = check_triangle_condition(TrianglePhases(a, b, c))
    r2 = check_triangle_condition(TrianglePhases(b, c, a))
    assert r1.satisfied == r2.satisfied
    assert sorted(r1.residuals) == pytest.approx(sorted(r2.residuals), abs=1e-9)


@given(angles, angles, angles)
def test_residuals_in_range(a, b, c):
    r = check_triangle_condition(TrianglePhases(a, b, c))
    assert all(0 <= x <= PI + 1e-12 for x in r.residuals)


@given(st.integers(0, 1), st.integers(0, 1), st.integers(0, 1), st.floats(1e-6, 0.5))
def test_perturbation_breaks_solution(i, j, k, eps):
    p = TrianglePhases(i * PI + eps, j * PI, k * PI)
    assert not check_triangle_condition(p).satisfied


@pytest.mark.parametrize(
    "text, value",
    [("0", 0.0), ("pi", PI), ("-pi", -PI), ("1/2 pi", PI / 2), ("3pi/2", 1.5 * PI),
     ("pi/2", PI / 2), ("1.5", 1.5), ("2*pi", 2 * PI), ("π", PI)],
)
def test_parse_phase(text, value):
    assert parse_phase(text) == pytest.approx(value, abs=1e-15)


@pytest.mark.parametrize("text", ["", "abc", "1/0 pi", "pi/0", "1/2/3", "2/"])
def test_parse_phase_errors(text):
    with pytest.raises(ParseError):
        parse_phase(text)


def test_parse_phases():
    assert parse_phases("0,pi,pi").as_tuple() == pytest.approx((0, PI, PI))
    with pytest.raises(ParseError, match="w2"):
        parse_phases("0,x,pi")
    with pytest.raises(ParseError):
        parse_phases("0,pi")


def test_check_rejects_bad_tol():
    with pytest.raises(ValueError):
        check_triangle_condition(TrianglePhases(0, 0, 0), tol=0)


def test_grid_scan_shape_empty_safe():
    out = grid_scan(1)
    assert isinstance(out, np.ndarray) and out.shape == (1, 3)
