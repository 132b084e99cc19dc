import pytest

from models.constructors import (
    build_from_catalog,
    build_onb,
    build_parseval,
    load_catalog,
    onb_check,
    onb_existence,
    partition_runs,
    perfect_square_check,
)
from models.frame_analysis import parseval_check
from models.gabor_ops import frame_functional
from models.matrix_fn import aggregate_row0
from models.oracle import oracle_gram
from models.quaternion import Quaternion
from models.signal import FiniteSignal, WindowFamily, random_signal, supp_width
from utils.errors import ParameterError


def test_partition_runs():
    assert partition_runs(5, 3) == [[0, 1, 2], [3, 4]]
    assert partition_runs(5, 2) == [[0, 1], [2, 3], [4]]
    assert partition_runs(10, 5) == [[0, 1, 2, 3, 4], [5, 6, 7, 8, 9]]


def test_perfect_square_check():
    assert perfect_square_check(4)
    assert perfect_square_check(1)
    assert not perfect_square_check(6)
    assert not perfect_square_check(0)


@pytest.mark.parametrize("L,M,N", [(4, 3, 5), (9, 2, 5)])
def test_parseval_constructor(L, M, N, rng):
    W = build_parseval(L, M, N)
    assert W.L == L
    assert parseval_check(W)["holds"]
    assert W.norm_sum() == pytest.approx(N * N / (M * M), abs=1e-12)
    for k in W.params.residues():
        row = aggregate_row0(W, None, k)
        assert set(row) == {(0, 0)}
        assert row[(0, 0)].isclose(Quaternion.real(1 / (M * M)), 1e-12)
    for _ in range(100):
        h = random_signal(rng, 3)
        assert abs(frame_functional(W, h) - h.norm2()) <= 1e-9 * h.norm2()


def test_parseval_constructor_pads_with_empty_windows():
    W = build_parseval(9, 3, 5)
    assert W.L == 9
    assert sum(1 for w in W.windows if w.is_zero()) == 5
    assert parseval_check(W)["holds"]


def test_parseval_constructor_preconditions():
    with pytest.raises(ParameterError):
        build_parseval(4, 5, 10)
    with pytest.raises(ParameterError):
        build_parseval(6, 3, 5)


def test_onb_constructor(onb_5_10):
    assert onb_5_10.L == 4
    for g in onb_5_10.windows:
        assert g.norm() == pytest.approx(1.0)
        assert supp_width(g) == 4
    assert onb_check(onb_5_10)["holds"]


def test_onb_gram_identity(onb_5_10):
    indices = [(l, (m1, m2), (n1, n2)) for l, m1, m2, n1, n2 in
               [(0, 0, 0, 0, 0), (1, 2, 3, 0, 0), (2, 4, 4, -1, 1), (3, 1, 0, 1, 1), (0, 3, 2, 1, -1),
                (1, 0, 1, -1, -1), (2, 2, 2, 0, 1), (3, 4, 1, 1, 0), (0, 1, 4, -1, 0), (1, 3, 3, 1, 1)]]
    gram = oracle_gram(onb_5_10, indices)
    for a in range(len(indices)):
        for b in range(len(indices)):
            expected = Quaternion.real(1.0 if a == b else 0.0)
            assert gram[a][b].isclose(expected, 1e-9)


def test_trivial_onb():
    W = build_onb(1, 1)
    assert W.L == 1
    assert W.windows[0] == FiniteSignal.delta((0, 0))
    assert onb_check(W, sample_size=5)["holds"]


def test_onb_constructor_rejects_non_divisor():
    with pytest.raises(ParameterError, match="N² = LM²"):
        build_onb(4, 10)


def test_onb_existence():
    assert onb_existence(4, 10) == {"exists": False, "L": None}
    assert onb_existence(5, 10) == {"exists": True, "L": 4}
    assert onb_existence(7, 7) == {"exists": True, "L": 1}


def test_existence_matches_constructor():
    for M in range(1, 13):
        for N in range(1, 13):
            exists = onb_existence(M, N)["exists"]
            try:
                build_onb(M, N)
                built = True
            except ParameterError:
                built = False
            assert exists == built


def test_onb_check_negative_cases(parseval_4_3_5, onb_5_10):
    partition = onb_check(parseval_4_3_5)
    assert not partition["holds"]
    assert not partition["ratio_ok"]
    assert partition["parseval"]["holds"]
    windows = list(onb_5_10.windows)
    windows[2] = windows[2] * 0.9
    rescaled = onb_check(WindowFamily(onb_5_10.params, windows))
    assert not rescaled["holds"]
    assert rescaled["ratio_ok"]


def test_onb_check_quaternion_windows():
    unit = Quaternion(0.5, 0.5, 0.5, 0.5)
    W = WindowFamily.from_windows([FiniteSignal.delta((0, 0), unit)], M=2, N=1)
    result = onb_check(W, sample_size=4)
    assert result["parseval"]["criterion"] == "enumerated_parseval"
    assert not result["holds"]


def test_catalog():
    catalog = load_catalog()
    assert {"parseval_4_3_5", "parseval_9_2_5", "onb_5_10", "onb_4_10"} <= set(catalog)
    assert build_from_catalog("onb_5_10").L == 4
    assert parseval_check(build_from_catalog("parseval_9_2_5"))["holds"]
    with pytest.raises(ParameterError):
        build_from_catalog("onb_4_10")
    with pytest.raises(ParameterError, match="unknown catalog entry"):
        build_from_catalog("missing")


@pytest.mark.parametrize("M,N", [(0, 10), (5, 0), (-2, 4)])
def test_onb_existence_needs_positive_lattice(M, N):
    with pytest.raises(ParameterError):
        onb_existence(M, N)
