import numpy as np
import pytest

from models.gabor_ops import frame_functional
from models.matrix_fn import (
    aggregate_row0,
    aggregate_truncated,
    diagonal_entry,
    f1_f2_decomposition,
    product_entry,
    row_support_box,
    vanishing_radius,
)
from models.oracle import oracle_frame_functional
from models.quaternion import ZERO, Quaternion
from models.signal import FiniteSignal, GaborParams, WindowFamily, random_signal
from tests.conftest import random_real_family
from utils.errors import NonRealWindowError, ParameterError


def test_product_entry_single_point():
    g = FiniteSignal.delta((0, 0))
    assert product_entry(g, g, (0, 0), (0, 0), (0, 0), 2, 1) == Quaternion.real(1.0)
    assert product_entry(g, g, (0, 0), (0, 0), (1, 0), 2, 1) == ZERO


def test_product_entry_adjoint_symmetry(rng):
    g, h = random_signal(rng, 2), random_signal(rng, 2)
    for p in [(0, 0), (1, 0), (-1, 1)]:
        for p_prime in [(0, 0), (0, 1), (1, -1)]:
            left = product_entry(g, h, (1, 0), p, p_prime, 2, 3)
            right = product_entry(h, g, (1, 0), p_prime, p, 2, 3).conj()
            assert left.isclose(right, 1e-12)


def test_onb_rows(onb_5_10):
    for k in [(0, 0), (3, 7), (9, 9)]:
        row = aggregate_row0(onb_5_10, None, k)
        assert set(row) == {(0, 0)}
        assert row[(0, 0)].isclose(Quaternion.real(1 / 25), 1e-12)


def test_single_point_row(single_point):
    row = aggregate_row0(single_point, None, (0, 0), p_window=[(0, 0), (1, 0), (0, -1)])
    assert row == {(0, 0): Quaternion.real(1.0), (1, 0): ZERO, (0, -1): ZERO}


def test_row_rejects_mismatched_families(onb_5_10, single_point):
    with pytest.raises(ParameterError):
        aggregate_row0(onb_5_10, single_point, (0, 0))


def test_rows_are_n_periodic(rng):
    W = random_real_family(rng, 2, 3, 4, high=5)
    for k in [(0, 0), (1, 2), (3, 3)]:
        for q in [(1, 0), (0, -1), (2, 1)]:
            shifted = (k[0] + q[0] * W.N, k[1] + q[1] * W.N)
            base, moved = aggregate_row0(W, None, k), aggregate_row0(W, None, shifted)
            assert set(base) == set(moved)
            for p in base:
                assert base[p].isclose(moved[p], 1e-12)


def test_rows_vanish_outside_support_box(rng):
    W = random_real_family(rng, 3, 2, 3, high=6)
    box = row_support_box(W)
    for k in W.params.residues():
        for p in aggregate_row0(W, None, k):
            assert box[0] <= p[0] <= box[1] and box[2] <= p[1] <= box[3]
    assert vanishing_radius(W) == max(abs(v) for v in box)


def test_zero_family_has_no_row_box():
    W = WindowFamily(GaborParams(1, 2, 2), [FiniteSignal.zero()])
    assert row_support_box(W) is None
    assert vanishing_radius(W) == 0


def test_truncated_matrix_properties(rng):
    W = random_real_family(rng, 2, 2, 3, high=4)
    k = (1, 2)
    matrix = aggregate_truncated(W, k, 2)
    np.testing.assert_allclose(matrix.values, matrix.values.T, atol=1e-12)
    for p in [(0, 0), (1, -1), (-2, 2)]:
        expected = diagonal_entry(W, (k[0] + p[0] * W.M, k[1] + p[1] * W.M))
        assert matrix.entry(p, p) == pytest.approx(expected, abs=1e-12)
    # entry(p + q, p' + q) at k equals entry(p, p') at k + qM
    shifted = aggregate_truncated(W, (k[0] + W.M, k[1]), 2)
    assert matrix.entry((1, 0), (0, 1)) == pytest.approx(shifted.entry((0, 0), (-1, 1)), abs=1e-12)
    periodic = aggregate_truncated(W, (k[0] + W.N, k[1] - W.N), 2)
    np.testing.assert_allclose(matrix.values, periodic.values, atol=1e-12)


def test_truncated_matrix_requires_real_windows():
    W = WindowFamily(GaborParams(1, 2, 1), [FiniteSignal.delta((0, 0), Quaternion(0, 1, 0, 0))])
    with pytest.raises(NonRealWindowError):
        aggregate_truncated(W, (0, 0), 1)


def test_truncated_matrix_to_dict(single_point):
    data = aggregate_truncated(single_point, (0, 0), 1).to_dict()
    assert data["size"] == 9
    assert len(data["entries"]) == 9
    assert all(entry["p"] == entry["p_prime"] and entry["value"] == 1.0 for entry in data["entries"])


def test_f1_f2_matches_frame_functional():
    rng = np.random.default_rng(2024)
    for _ in range(100):
        L = int(rng.integers(1, 5))
        M = int(rng.integers(1, 6))
        N = int(rng.integers(1, 6))
        W = random_real_family(rng, L, M, N)
        h = random_signal(rng, 4)
        f1, f2 = f1_f2_decomposition(W, h)
        assert f1 + f2 == pytest.approx(frame_functional(W, h), rel=1e-9, abs=1e-9)


def test_f1_f2_matches_oracle():
    rng = np.random.default_rng(77)
    for _ in range(6):
        W = random_real_family(rng, 2, int(rng.integers(2, 4)), int(rng.integers(1, 4)), high=3)
        h = random_signal(rng, 2)
        f1, f2 = f1_f2_decomposition(W, h)
        assert f1 + f2 == pytest.approx(oracle_frame_functional(W, h), rel=1e-9, abs=1e-9)


def test_f2_vanishes_for_narrow_windows(onb_5_10, rng):
    h = random_signal(rng, 6)
    f1, f2 = f1_f2_decomposition(onb_5_10, h)
    assert f2 == 0.0
    assert f1 == pytest.approx(h.norm2(), rel=1e-12)


def test_truncated_matrix_rejects_negative_radius(single_point):
    with pytest.raises(ParameterError):
        aggregate_truncated(single_point, (0, 0), -1)
    assert aggregate_truncated(single_point, (0, 0), 0).eigenvalue_range() == (1.0, 1.0)
