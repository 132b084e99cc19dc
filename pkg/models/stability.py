"""
Perturbation stability: if {u_i} is a frame with bounds A ≤ B and the
differences {u_i - v_i} are Bessel with bound R < A, then {v_i} is a frame
with bounds A(1 - √(R/A))² and B(1 + √(R/B))².
"""
import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

from models.frame_analysis import bessel_bound_sufficient, frame_bounds_sufficient, narrow_support_frame
from models.gabor_ops import all_modulations, coefficient_block, frame_functional, translation_range
from models.signal import FiniteSignal, WindowFamily, random_signal, require_same_params
from utils.config import get_default_seed, get_default_trials, resolve_tolerance
from utils.errors import NarrowSupportError, ParameterError

logger = logging.getLogger(__name__)


@dataclass
class StabilityReport:
    R: float
    A: float
    B: float
    applicable: bool
    new_lower: Optional[float] = None
    new_upper: Optional[float] = None
    bounds_source: str = "supplied"

    def to_dict(self) -> Dict[str, Any]:
        return {"criterion": "stability", **asdict(self)}


def perturbed_bounds(A: float, B: float, R: float) -> Tuple[float, float]:
    if A <= 0:
        raise ParameterError(f"lower frame bound must be positive, got {A}")
    if B < A:
        raise ParameterError(f"upper bound {B} is below lower bound {A}")
    if R < 0:
        raise ParameterError(f"perturbation bound must be non-negative, got {R}")
    return A * (1.0 - math.sqrt(R / A)) ** 2, B * (1.0 + math.sqrt(R / B)) ** 2


def finite_frame_bounds(vectors: np.ndarray) -> Tuple[float, float]:
    """Optimal frame bounds of a finite real family: extreme eigenvalues of Σ v vᵗ."""
    vectors = np.asarray(vectors, dtype=float)
    if vectors.ndim != 2:
        raise ParameterError(f"expected a 2-d array of vectors, got shape {vectors.shape}")
    eigenvalues = np.linalg.eigvalsh(vectors.T @ vectors)
    return float(eigenvalues[0]), float(eigenvalues[-1])


def finite_perturbation_check(U: np.ndarray, V: np.ndarray, tol: float = 1e-10) -> Dict[str, Any]:
    """
    Checks the perturbation statement on finite families given as the rows
    of U and V. Vacuous (holds) when R ≥ A.
    """
    U = np.asarray(U, dtype=float)
    V = np.asarray(V, dtype=float)
    if U.shape != V.shape:
        raise ParameterError(f"families differ in shape: {U.shape} vs {V.shape}")
    A, B = finite_frame_bounds(U)
    _, R = finite_frame_bounds(U - V)
    actual = finite_frame_bounds(V)
    result = {"A": A, "B": B, "R": R, "actual": list(actual), "applicable": R < A and A > 0}
    if not result["applicable"]:
        result.update(predicted=None, holds=True)
        return result
    lower, upper = perturbed_bounds(A, B, R)
    result["predicted"] = [lower, upper]
    result["holds"] = lower - tol <= actual[0] and actual[1] <= upper + tol
    return result


def perturbation_R(G: WindowFamily, H: WindowFamily) -> float:
    """Row-sum Bessel bound of the difference family {g_l - h_l}."""
    return bessel_bound_sufficient(G.difference(H))


def certified_bounds(G: WindowFamily) -> Tuple[float, float, str]:
    """Best available certified bounds: exact narrow-support bounds, else row-sum bounds."""
    try:
        report = narrow_support_frame(G).report
        if report.verdict == "frame":
            return report.lower, report.upper, "narrow_support"
    except NarrowSupportError:
        pass
    bounds = frame_bounds_sufficient(G)
    if bounds is None:
        raise ParameterError("no certified frame bounds are available for G; supply A and B")
    return bounds[0], bounds[1], "row_sum_sufficient"


def stability_verdict(G: WindowFamily, H: WindowFamily, A: float = None,
                      B: float = None) -> StabilityReport:
    require_same_params(G, H)
    source = "supplied"
    if A is None or B is None:
        A, B, source = certified_bounds(G)
    if A <= 0:
        raise ParameterError(f"lower frame bound must be positive, got {A}")
    R = perturbation_R(G, H)
    if R >= A:
        logger.info("perturbation bound R=%.6g does not stay below A=%.6g", R, A)
        return StabilityReport(R=R, A=A, B=B, applicable=False, bounds_source=source)
    lower, upper = perturbed_bounds(A, B, R)
    return StabilityReport(R=R, A=A, B=B, applicable=True, new_lower=lower,
                           new_upper=upper, bounds_source=source)


def difference_functional(G: WindowFamily, H: WindowFamily, u: FiniteSignal) -> float:
    """
    Σ |<E T g_l, u> - <E T h_l, u>|², i.e. the frame functional of the
    difference family evaluated atom by atom.
    """
    require_same_params(G, H)
    m_pairs = all_modulations(G.params)
    total = 0.0
    for g, h in zip(G.windows, H.windows):
        translates = sorted(set(translation_range(g, u, G.N)) | set(translation_range(h, u, G.N)))
        for n in translates:
            block = coefficient_block(g, n, u, G.params, m_pairs) - coefficient_block(h, n, u, G.params, m_pairs)
            total += float(np.sum(block * block))
    return total


def perturbation_functional_check(G: WindowFamily, H: WindowFamily, trials: int = None,
                                  seed: int = None, tol: float = None) -> Dict[str, Any]:
    """frame_functional(G - H, u) ≤ R ||u||² on random finite u."""
    tol = resolve_tolerance(tol)
    trials = get_default_trials() if trials is None else trials
    if trials < 1:
        raise ParameterError(f"trials must be at least 1, got {trials}")
    seed = get_default_seed() if seed is None else seed
    R = perturbation_R(G, H)
    difference = G.difference(H)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for trial in range(trials):
        u = random_signal(rng, 3)
        energy = u.norm2()
        value = frame_functional(difference, u)
        atomwise = difference_functional(G, H, u)
        if abs(value - atomwise) > tol * max(1.0, value):
            logger.warning("difference atoms disagree with atoms of the difference: %.3e vs %.3e", value, atomwise)
            return {"criterion": "perturbation_functional", "holds": False, "R": R, "tolerance": tol,
                    "witness": {"trial": trial, "functional": value, "atomwise": atomwise}}
        worst = max(worst, value / energy)
        if value > (R + tol * max(1.0, R)) * energy:
            return {"criterion": "perturbation_functional", "holds": False, "R": R, "tolerance": tol,
                    "witness": {"trial": trial, "ratio": value / energy}}
    return {"criterion": "perturbation_functional", "holds": True, "R": R, "tolerance": tol,
            "max_ratio": worst, "witness": None}
