"""
Explicit window constructions (partition-based Parseval frames and orthonormal
bases), the structural predicates around them, and the worked-example catalog.
"""
import json
import logging
import math
import os
from typing import Any, Dict, List, Optional

import numpy as np

from models.frame_analysis import parseval_check
from models.gabor_ops import frame_functional
from models.oracle import oracle_gram
from models.quaternion import Quaternion
from models.signal import FiniteSignal, GaborParams, WindowFamily, random_signal
from utils.config import get_default_seed, resolve_tolerance
from utils.errors import ParameterError

logger = logging.getLogger(__name__)

_CATALOG_CACHE = None


def partition_runs(N: int, M: int) -> List[List[int]]:
    """
    N_N split into consecutive runs [rM, (r+1)M) followed by the remainder
    run of length N - RM when it is nonempty.
    """
    return [list(range(start, min(start + M, N))) for start in range(0, N, M)]


def _block_windows(runs: List[List[int]], M: int) -> List[FiniteSignal]:
    return [FiniteSignal.box(rows, cols, 1.0 / M) for rows in runs for cols in runs]


def perfect_square_check(L: int) -> bool:
    if L < 1:
        return False
    return math.isqrt(L) ** 2 == L


def build_parseval(L: int, M: int, N: int) -> WindowFamily:
    """
    Parseval family from the consecutive-run partition of N_N: windows
    (1/M)·χ_{I_r × I_r'}, padded with empty windows up to L = K².
    """
    params = GaborParams(L, M, N)
    if not perfect_square_check(L):
        raise ParameterError(f"L={L} is not a perfect square")
    if N * N >= L * M * M:
        raise ParameterError(
            f"the partition construction needs N² < LM², got N²={N * N} and LM²={L * M * M}"
        )
    windows = _block_windows(partition_runs(N, M), M)
    windows += [FiniteSignal.zero()] * (L - len(windows))
    logger.debug("built Parseval family L=%d M=%d N=%d with %d empty windows", L, M, N,
                 sum(1 for w in windows if w.is_zero()))
    return WindowFamily(params, windows)


def onb_existence(M: int, N: int) -> Dict[str, Any]:
    """An orthonormal basis exists iff N²/M² is a perfect-square integer, i.e. M | N."""
    if M < 1 or N < 1:
        raise ParameterError(f"M and N must be positive integers, got M={M}, N={N}")
    if N % M != 0:
        return {"exists": False, "L": None}
    return {"exists": True, "L": (N // M) ** 2}


def build_onb(M: int, N: int) -> WindowFamily:
    existence = onb_existence(M, N)
    if not existence["exists"]:
        raise ParameterError(
            f"no Gabor orthonormal basis exists for M={M}, N={N}: "
            f"N²={N * N} is not L·M² for any perfect square L (N² = LM² fails)"
        )
    runs = partition_runs(N, M)
    return WindowFamily(GaborParams(existence["L"], M, N), _block_windows(runs, M))


def _enumerated_parseval(W: WindowFamily, tol: float, trials: int, seed: int) -> Dict[str, Any]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        h = random_signal(rng, 2)
        energy = h.norm2()
        worst = max(worst, abs(frame_functional(W, h) - energy) / energy)
    return {"criterion": "enumerated_parseval", "holds": worst <= tol, "tolerance": tol,
            "max_relative_error": worst}


def _sample_atoms(W: WindowFamily, sample_size: int, seed: int) -> List[tuple]:
    rng = np.random.default_rng(seed)
    seen = []
    attempts = 0
    while len(seen) < sample_size and attempts < 50 * sample_size:
        attempts += 1
        l = int(rng.integers(W.L))
        if W.windows[l].is_zero():
            continue
        m = (int(rng.integers(W.M)), int(rng.integers(W.M)))
        n = (int(rng.integers(-1, 2)), int(rng.integers(-1, 2)))
        if (l, m, n) not in seen:
            seen.append((l, m, n))
    return seen


def onb_check(W: WindowFamily, tol: float = None, sample_size: int = 20,
              seed: int = None) -> Dict[str, Any]:
    """
    Parseval AND N² = LM², plus a Gram spot-check of ``sample_size`` atoms
    with n ∈ [-1, 1]².

    Real windows use the row criterion for Parseval; quaternion-valued ones
    fall back to the enumerated identity on random signals.
    """
    tol = resolve_tolerance(tol)
    seed = get_default_seed() if seed is None else seed
    ratio_ok = W.N * W.N == W.L * W.M * W.M
    if W.is_real:
        parseval = parseval_check(W, tol)
    else:
        parseval = _enumerated_parseval(W, tol, trials=10, seed=seed)

    sample = _sample_atoms(W, sample_size, seed)
    gram = oracle_gram(W, sample)
    deviation = 0.0
    for a in range(len(sample)):
        for b in range(len(sample)):
            expected = Quaternion.real(1.0 if a == b else 0.0)
            deviation = max(deviation, (gram[a][b] - expected).modulus())
    gram_ok = deviation <= tol
    holds = ratio_ok and parseval["holds"] and gram_ok
    if not holds:
        logger.info("onb_check failed: ratio_ok=%s parseval=%s gram_ok=%s", ratio_ok, parseval["holds"], gram_ok)
    return {
        "criterion": "onb",
        "holds": holds,
        "tolerance": tol,
        "ratio_ok": ratio_ok,
        "ratio": {"N2": W.N * W.N, "LM2": W.L * W.M * W.M},
        "parseval": parseval,
        "gram": {
            "sample": [{"l": l, "m": list(m), "n": list(n)} for l, m, n in sample],
            "max_deviation": deviation,
            "holds": gram_ok,
        },
    }


def _load_catalog() -> List[Dict[str, Any]]:
    global _CATALOG_CACHE
    if _CATALOG_CACHE is not None:
        return _CATALOG_CACHE

    data_path = os.path.join(os.path.dirname(os.path.dirname(__file__)), "data", "catalog.json")
    with open(data_path, "r", encoding="utf-8") as f:
        _CATALOG_CACHE = json.load(f)
    return _CATALOG_CACHE


def load_catalog() -> Dict[str, Dict[str, Any]]:
    """Named worked examples, keyed by name."""
    return {entry["name"]: entry for entry in _load_catalog()}


def build_from_catalog(name: str) -> WindowFamily:
    catalog = load_catalog()
    entry: Optional[Dict[str, Any]] = catalog.get(name)
    if entry is None:
        raise ParameterError(f"unknown catalog entry {name!r}; known: {', '.join(sorted(catalog))}")
    if entry["kind"] == "parseval":
        return build_parseval(entry["L"], entry["M"], entry["N"])
    if entry["kind"] == "onb":
        return build_onb(entry["M"], entry["N"])
    raise ParameterError(f"catalog entry {name!r} has unknown kind {entry['kind']!r}")
