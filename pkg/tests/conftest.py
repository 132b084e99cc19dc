import numpy as np
import pytest

from models.constructors import build_onb, build_parseval
from models.signal import FiniteSignal, GaborParams, WindowFamily, random_real_window


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def onb_5_10():
    return build_onb(5, 10)


@pytest.fixture
def parseval_4_3_5():
    return build_parseval(4, 3, 5)


@pytest.fixture
def parseval_9_2_5():
    return build_parseval(9, 2, 5)


@pytest.fixture
def single_point():
    """g = χ_{(0,0)} with M=2, N=1: every bound equals 4."""
    return WindowFamily(GaborParams(1, 2, 1), [FiniteSignal.delta((0, 0))])


def narrow_family(rng, L, M, N):
    """Real windows filling [0, M-1]²: narrow, and covering every residue when N ≤ M."""
    windows = [random_real_window(rng, 0, M - 1, density=1.0) for _ in range(L)]
    return WindowFamily(GaborParams(L, M, N), windows)


def random_real_family(rng, L, M, N, high=6):
    windows = []
    for _ in range(L):
        window = random_real_window(rng, 0, high)
        if window.is_zero():
            window = FiniteSignal.delta((0, 0), 1.0)
        windows.append(window)
    return WindowFamily(GaborParams(L, M, N), windows)
