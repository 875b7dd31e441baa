import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from laplaceq.errors import InvalidInput, InvalidParameter, NumericalFailure
from laplaceq.graphs import density_matrix, star, star_like, star_plus_path, wheel
from laplaceq.spectra import (
    Spectrum,
    closed_form_spectrum,
    entropy,
    entropy_closed_form,
    jacobi_eigh,
    numeric_spectrum,
    rationalize,
)

from conftest import entropy_direct, family_members, lapack_eigenvalues

# 30-digit reference values computed with mpmath
FROZEN_ENTROPY = {
    ("star", 4, None): 1.25162916738782284812,
    ("star_like", 4, None): 1.40563906222956643195,
    ("alike_disjoint", 5, None): 1.82501121082417711245,
    ("alike_path", 4, None): 1.52192809488736234787,
    ("star_mlike", 7, 2): 2.17742128382936463495,
    ("star_mlike", 7, 3): 2.28569461472599934151,
}
PATH7_EIGENVALUES = [0.3181818181818182, 0.21509321852585805, 0.18181818181818182,
                     0.13636363636363635, 0.09090909090909091, 0.05763405420141467, 0.0]


def entries(*pairs):
    return tuple((F(v), m) for v, m in pairs)


def test_closed_form_examples():
    assert closed_form_spectrum("star", 4).entries == entries(("4/6", 1), ("1/6", 2), (0, 1))
    assert closed_form_spectrum("star_like", 4).entries == entries(("1/2", 1), ("3/8", 1), ("1/8", 1), (0, 1))
    assert closed_form_spectrum("star_like", 3).entries == entries(("1/2", 2), (0, 1))
    assert closed_form_spectrum("alike_path", 4).entries == entries(("4/10", 2), ("2/10", 1), (0, 1))
    assert closed_form_spectrum("alike_disjoint", 5).entries == entries(("5/12", 1), ("3/12", 2), ("1/12", 1), (0, 1))
    assert closed_form_spectrum("star_mlike", 7, 3).entries == entries(
        ("7/18", 1), ("3/18", 3), ("1/18", 2), (0, 1))


def test_closed_form_domain():
    with pytest.raises(InvalidParameter):
        closed_form_spectrum("star", 1)
    with pytest.raises(InvalidParameter):
        closed_form_spectrum("alike_path", 3)
    with pytest.raises(InvalidParameter):
        closed_form_spectrum("star_mlike", 7, 4)
    with pytest.raises(InvalidParameter):
        closed_form_spectrum("wheel", 7)


def test_closed_forms_match_lapack():
    # independent eigen-route: LAPACK on the integer Laplacian
    for family, n, m, g in family_members(30):
        cf = closed_form_spectrum(family, n, m)
        assert cf.order == n
        assert cf.is_normalized()
        got = lapack_eigenvalues(g)
        want = np.array([float(v) for v in cf.values()])
        assert np.max(np.abs(got - want)) < 1e-12, (family, n, m)


def test_jacobi_matches_lapack_on_families():
    for _, _, _, g in family_members(20):
        w, _ = jacobi_eigh(g.laplacian().astype(float) / g.total_degree())
        assert np.max(np.abs(w - lapack_eigenvalues(g))) < 1e-12


def test_jacobi_trivial_sizes():
    w, v = jacobi_eigh(np.array([[2.0]]))
    assert w.tolist() == [2.0] and v.tolist() == [[1.0]]
    w, v = jacobi_eigh(np.diag([1.0, 3.0, 2.0]))
    assert w.tolist() == [3.0, 2.0, 1.0]


def test_jacobi_rejects_asymmetric():
    with pytest.raises(InvalidInput):
        jacobi_eigh(np.array([[1.0, 2.0], [0.0, 1.0]]))


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(1, 12), st.integers(1, 12)),
              elements=st.floats(-10, 10, allow_nan=False)).filter(lambda a: a.shape[0] == a.shape[1]))
def test_jacobi_reconstruction_property(a):
    s = (a + a.T) / 2
    w, v = jacobi_eigh(s)
    scale = max(1.0, np.linalg.norm(s))
    assert np.linalg.norm(v @ np.diag(w) @ v.T - s) <= 1e-9 * scale
    assert np.linalg.norm(v.T @ v - np.eye(len(s))) <= 1e-9
    assert np.all(np.diff(w) <= 0)
    assert np.allclose(w, np.sort(np.linalg.eigvalsh(s))[::-1], atol=1e-9 * scale)


def test_numeric_spectrum_path_graph():
    s = numeric_spectrum(density_matrix(star_plus_path(7, 5)))
    assert s.mode == "numeric" and s.multiplicities() == (1,) * 7
    assert np.allclose([float(v) for v in s.values()], PATH7_EIGENVALUES, atol=1e-12)


def test_wheel_rationalizes():
    s = rationalize(numeric_spectrum(density_matrix(wheel(7))))
    assert s.entries == entries(("7/24", 1), ("5/24", 1), ("4/24", 2), ("2/24", 2), (0, 1))


def test_rationalize_rejects_irrational():
    with pytest.raises(InvalidInput):
        rationalize(numeric_spectrum(density_matrix(star_plus_path(7, 5))), max_denominator=100)


def test_numeric_spectrum_checks():
    with pytest.raises(InvalidInput):
        numeric_spectrum(np.eye(3))
    with pytest.raises(NumericalFailure):
        numeric_spectrum(np.array([[1.5, 0.0], [0.0, -0.5]]))
    # a tiny negative eigenvalue is clamped
    s = numeric_spectrum(np.array([[1.0 + 5e-11, 0.0], [0.0, -5e-11]]))
    assert s.values()[-1] == 0.0


def test_numeric_grouping_star():
    s = numeric_spectrum(density_matrix(star(9)))
    assert s.multiplicities() == (1, 7, 1)


def test_spectrum_dict_round_trip():
    for s in (closed_form_spectrum("star_mlike", 9, 2), numeric_spectrum(density_matrix(star(5)))):
        assert Spectrum.from_dict(s.to_dict()) == s
    assert closed_form_spectrum("star", 2).to_dict()["entries"][-1]["value"] == "0/1"
    with pytest.raises(InvalidInput):
        Spectrum.from_dict({"entries": []})


@pytest.mark.parametrize("key", sorted(FROZEN_ENTROPY, key=str))
def test_frozen_entropies(key):
    family, n, m = key
    want = FROZEN_ENTROPY[key]
    assert entropy(closed_form_spectrum(family, n, m)).bits == pytest.approx(want, abs=1e-13)
    assert entropy_closed_form(family, n, m).bits == pytest.approx(want, abs=1e-12)


def test_entropy_simple_cases():
    assert entropy(closed_form_spectrum("star", 2)).bits == 0.0
    assert entropy(Spectrum.from_values([F(1, 4)] * 4)).bits == pytest.approx(2.0, abs=1e-15)
    with pytest.raises(InvalidInput):
        entropy(Spectrum.from_values([F(1, 2)]))


def test_entropy_closed_form_vs_spectrum_up_to_100():
    for family, n, m, _ in family_members(100):
        a = entropy(closed_form_spectrum(family, n, m)).bits
        b = entropy_closed_form(family, n, m).bits
        c = entropy_direct(closed_form_spectrum(family, n, m).values())
        assert abs(a - b) <= 1e-10 and abs(a - c) <= 1e-12


def test_entropy_bounds():
    for family, n, m, g in family_members(25):
        bits = entropy(closed_form_spectrum(family, n, m)).bits
        # at most log2(rank) = log2(n - 1) for a connected graph
        assert 0.0 <= bits <= math.log2(n - 1) + 1e-12


@given(st.lists(st.integers(0, 50), min_size=1, max_size=15).filter(lambda xs: sum(xs) > 0))
def test_entropy_property_bounds(counts):
    total = sum(counts)
    s = Spectrum.from_values([F(c, total) for c in counts])
    bits = entropy(s).bits
    support = sum(1 for c in counts if c)
    assert -1e-12 <= bits <= math.log2(support) + 1e-12
    assert bits == pytest.approx(entropy(s.to_numeric()).bits, abs=1e-12)


def test_star_like_n4_spectrum_sum():
    assert numeric_spectrum(density_matrix(star_like(4))).total() == pytest.approx(1.0, abs=1e-12)
