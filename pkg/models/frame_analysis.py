"""
Frame, Bessel and Parseval decisions for a window family.

Every per-k scan runs over k ∈ N_N² only: the aggregates are N-periodic in k,
so those N² base points see every value the criteria depend on.
"""
import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from models.gabor_ops import frame_functional
from models.matrix_fn import (
    aggregate_truncated,
    diagonal_entry,
    periodic_rows,
    require_real,
)
from models.signal import FiniteSignal, Point, WindowFamily, random_signal, supp_width
from utils.config import get_max_radius, resolve_tolerance
from utils.errors import NarrowSupportError, ParameterError

logger = logging.getLogger(__name__)

VERDICTS = ("frame", "bessel_only", "not_frame", "inconclusive")


@dataclass
class FrameReport:
    """Outcome of one frame criterion, with the data needed to audit it."""

    criterion: str
    verdict: str
    lower: Optional[float] = None
    upper: Optional[float] = None
    method: str = ""
    tolerance: float = 1e-9
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    witnesses: List[Dict[str, Any]] = field(default_factory=list)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ParameterError(f"unknown verdict {self.verdict!r}")
        if self.verdict == "frame" and not (self.lower is not None and self.lower > 0):
            raise ParameterError("a frame verdict needs a positive lower bound")
        if self.lower is not None and self.upper is not None and self.lower > self.upper + self.tolerance:
            raise ParameterError(f"lower bound {self.lower} exceeds upper bound {self.upper}")

    @property
    def affirmative(self) -> bool:
        return self.verdict in ("frame", "bessel_only")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _k_list(k: Point) -> List[int]:
    return [int(k[0]), int(k[1])]


def necessary_diagonal(W: WindowFamily, A: float, B: float, tol: float = None) -> Dict[str, Any]:
    """
    Checks A/M² ≤ Σ_l Σ_n |g_l(k - nN)|² ≤ B/M² at every k ∈ N_N².

    Valid for quaternion-valued windows. The first violating k is the witness.
    """
    tol = resolve_tolerance(tol)
    M2 = float(W.M * W.M)
    diagonals = []
    witness = None
    for k in W.params.residues():
        value = diagonal_entry(W, k)
        diagonals.append({"k": _k_list(k), "value": value})
        if witness is None and not (A / M2 - tol <= value <= B / M2 + tol):
            witness = {"k": _k_list(k), "value": value, "range": [A / M2, B / M2]}
    return {
        "criterion": "necessary_diagonal",
        "holds": witness is None,
        "tolerance": tol,
        "diagonals": diagonals,
        "witness": witness,
    }


def parseval_necessary(W: WindowFamily, tol: float = None) -> Dict[str, Any]:
    """N² ≤ LM², and whether Σ_l ||g_l||² equals N²/M²."""
    tol = resolve_tolerance(tol)
    L, M, N = W.L, W.M, W.N
    target = (N * N) / float(M * M)
    norm_sum = W.norm_sum()
    return {
        "criterion": "parseval_necessary",
        "ratio_ok": N * N <= L * M * M,
        "norm_sum": norm_sum,
        "target": target,
        "norm_sum_ok": abs(norm_sum - target) <= tol,
        "tolerance": tol,
    }


def row_diagnostics(W: WindowFamily, rows: Dict[Point, Dict[Point, float]] = None) -> List[Dict[str, Any]]:
    """Per-k diagonal value and off-row absolute sum of the row-0 aggregate."""
    rows = periodic_rows(W) if rows is None else rows
    out = []
    for k, row in rows.items():
        diagonal = row.get((0, 0), 0.0)
        off_row = sum(abs(v) for p, v in row.items() if p != (0, 0))
        out.append({"k": _k_list(k), "diagonal": diagonal, "off_row": off_row})
    return out


def bessel_bound_sufficient(W: WindowFamily) -> float:
    """B = M² max_k Σ_p |row0(k)(p)|. Finite for every finitely supported real family."""
    require_real(W)
    M2 = float(W.M * W.M)
    return M2 * max(sum(abs(v) for v in row.values()) for row in periodic_rows(W).values())


def frame_bounds_sufficient(W: WindowFamily) -> Optional[Tuple[float, float]]:
    """
    A = M² min_k (row0(k)(0) - Σ_{p≠0} |row0(k)(p)|) and the Bessel bound B.

    Returns None when A ≤ 0: the row-sum test is then silent, which is not a
    proof that the family fails to be a frame.
    """
    require_real(W)
    M2 = float(W.M * W.M)
    rows = periodic_rows(W)
    lower = M2 * min(entry["diagonal"] - entry["off_row"] for entry in row_diagnostics(W, rows))
    upper = M2 * max(sum(abs(v) for v in row.values()) for row in rows.values())
    if lower <= 0:
        logger.debug("row-sum lower bound %.3e is not positive", lower)
        return None
    return lower, upper


@dataclass
class MultiplicativeFrame:
    """Narrow-support frame operator: S h(x) = M² d(x) h(x) with d N-periodic."""

    report: FrameReport
    M: int
    N: int
    diagonal: Dict[Point, float]

    def _factor(self, k: Point) -> float:
        return self.M * self.M * self.diagonal[(k[0] % self.N, k[1] % self.N)]

    def apply_S(self, h: FiniteSignal) -> FiniteSignal:
        """
        Apply the frame operator pointwise

        Args:
            h: Finite signal

        Returns:
            S h, with the same support as h
        """
        return h.map_values(lambda k, v: v * self._factor(k))

    def apply_S_inverse(self, h: FiniteSignal) -> FiniteSignal:
        """
        Undo apply_S

        Args:
            h: Finite signal

        Returns:
            S⁻¹ h

        Raises:
            ParameterError: if the diagonal vanishes somewhere on supp h
        """
        for k in h:
            if self._factor(k) <= 0.0:
                raise ParameterError(f"the frame operator is not invertible: diagonal vanishes at {k}")
        return h.map_values(lambda k, v: v / self._factor(k))


def narrow_support_frame(W: WindowFamily, A: float = None, B: float = None,
                         tol: float = None) -> MultiplicativeFrame:
    """
    Exact frame decision when every window has supp_width < M.

    Besides the width test, every off-row entry of the aggregate must vanish:
    points such as (0, 0) and (M, M) have row and column spans below M yet
    differ by a multiple of M.
    """
    tol = resolve_tolerance(tol)
    require_real(W)
    for index, g in enumerate(W.windows):
        if not g.is_zero() and supp_width(g) >= W.M:
            raise NarrowSupportError(f"window {index} has supp_width {supp_width(g)} >= M={W.M}")
    rows = periodic_rows(W)
    for k, row in rows.items():
        for p, value in row.items():
            if p != (0, 0) and abs(value) > tol:
                raise NarrowSupportError(
                    f"off-row aggregate entry at k={k}, p={p} is {value:.3e}; "
                    "the frame operator is not multiplicative"
                )
    diagonal = {k: row.get((0, 0), 0.0) for k, row in rows.items()}
    M2 = float(W.M * W.M)
    smallest = min(diagonal, key=lambda k: (diagonal[k], k))
    largest = max(diagonal, key=lambda k: (diagonal[k], k))
    lower, upper = M2 * diagonal[smallest], M2 * diagonal[largest]
    witnesses = []
    if diagonal[smallest] <= tol:
        verdict = "not_frame"
        witnesses.append({"k": _k_list(smallest), "diagonal": diagonal[smallest]})
    else:
        verdict = "frame"
    if verdict == "frame" and A is not None and B is not None:
        for k, value in diagonal.items():
            if not (A / M2 - tol <= value <= B / M2 + tol):
                verdict = "not_frame"
                witnesses.append({"k": _k_list(k), "diagonal": value, "range": [A / M2, B / M2]})
                break
    report = FrameReport(
        criterion="narrow_support",
        verdict=verdict,
        lower=lower if lower > tol else 0.0,
        upper=upper,
        method="multiplicative",
        tolerance=tol,
        diagnostics={
            "diagonal": [{"k": _k_list(k), "value": v} for k, v in diagonal.items()],
            "supplied_bounds": [A, B] if A is not None and B is not None else None,
        },
        witnesses=witnesses,
    )
    return MultiplicativeFrame(report=report, M=W.M, N=W.N, diagonal=diagonal)


def parseval_check(W: WindowFamily, tol: float = None) -> Dict[str, Any]:
    """
    True iff row0(k)(p) = [p = 0]/M² for every k ∈ N_N² and every p. Entries
    absent from a row vanish exactly, so testing the stored ones is loss-free.
    """
    tol = resolve_tolerance(tol)
    require_real(W)
    expected_diagonal = 1.0 / (W.M * W.M)
    violation = None
    for k, row in periodic_rows(W).items():
        candidates = dict(row)
        candidates.setdefault((0, 0), 0.0)
        for p in sorted(candidates):
            expected = expected_diagonal if p == (0, 0) else 0.0
            if abs(candidates[p] - expected) > tol:
                violation = {"k": _k_list(k), "p": list(p), "value": candidates[p], "expected": expected}
                break
        if violation is not None:
            break
    return {"criterion": "parseval", "holds": violation is None, "tolerance": tol, "violation": violation}


def operator_inequality_bounds(W: WindowFamily, R: int = None, tol: float = 1e-8,
                               max_radius: int = None) -> Dict[str, Any]:
    """
    Estimates the optimal bounds from principal truncations of the aggregate.

    A_est = M² min_k λ_min and B_est = M² max_k λ_max at radius R; R grows
    until both move by less than ``tol``. Truncation can only raise λ_min and
    lower λ_max, so A_est over-estimates and B_est under-estimates the true
    bounds.
    """
    require_real(W)
    max_radius = get_max_radius() if max_radius is None else max_radius
    radius = 1 if R is None else R
    if radius < 1:
        raise ParameterError(f"truncation radius must be at least 1, got {radius}")
    # convergence needs two consecutive radii
    max_radius = max(max_radius, radius + 1)
    M2 = float(W.M * W.M)
    history = []
    previous = None
    converged = False
    argmin = None
    while True:
        a_est, b_est = np.inf, -np.inf
        for k in W.params.residues():
            low, high = aggregate_truncated(W, k, radius).eigenvalue_range()
            if M2 * low < a_est:
                a_est, argmin = M2 * low, k
            b_est = max(b_est, M2 * high)
        history.append({"radius": radius, "A_est": a_est, "B_est": b_est})
        logger.debug("radius %d: A_est=%.12g B_est=%.12g", radius, a_est, b_est)
        if previous is not None and abs(a_est - previous[0]) < tol and abs(b_est - previous[1]) < tol:
            converged = True
            break
        if radius >= max_radius:
            break
        previous = (a_est, b_est)
        radius += 1
    if not converged:
        logger.warning("truncated estimates did not settle within radius %d", radius)
    return {
        "A_est": float(a_est),
        "B_est": float(b_est),
        "converged": converged,
        "radius": radius,
        "argmin_k": _k_list(argmin),
        "history": history,
        "monotonicity": "A_est is an upper estimate of the optimal lower bound; "
                        "B_est is a lower estimate of the optimal upper bound",
    }


def empirical_rayleigh(W: WindowFamily, trials: int, support_radius: int = 3,
                       seed: int = 0) -> Tuple[float, float]:
    """Min and max of frame_functional(W, h) / ||h||² over random finite h."""
    if trials < 1:
        raise ParameterError(f"trials must be at least 1, got {trials}")
    rng = np.random.default_rng(seed)
    ratios = []
    for _ in range(trials):
        h = random_signal(rng, support_radius, real=False)
        ratios.append(frame_functional(W, h) / h.norm2())
    return float(min(ratios)), float(max(ratios))


def bessel_report(W: WindowFamily, tol: float = None) -> FrameReport:
    tol = resolve_tolerance(tol)
    upper = bessel_bound_sufficient(W)
    return FrameReport(
        criterion="bessel",
        verdict="bessel_only",
        upper=upper,
        method="row_sum_sufficient",
        tolerance=tol,
        diagnostics={"rows": row_diagnostics(W)},
    )


def analyze_frame(W: WindowFamily, radius: int = None, tol: float = None,
                  max_radius: int = None) -> FrameReport:
    """
    Runs the frame criteria in order of strength and reports the first
    decisive one. Exact criteria (Parseval rows, narrow support) win over
    row-sum bounds, which win over truncated estimates.
    """
    tol = resolve_tolerance(tol)
    if not W.is_real:
        return _analyze_quaternion(W, tol)

    parseval = parseval_check(W, tol)
    if parseval["holds"]:
        return FrameReport(criterion="frame", verdict="frame", lower=1.0, upper=1.0,
                           method="parseval", tolerance=tol)

    try:
        return narrow_support_frame(W, tol=tol).report
    except NarrowSupportError as exc:
        logger.debug("narrow-support criterion not applicable: %s", exc)

    rows = row_diagnostics(W)
    bounds = frame_bounds_sufficient(W)
    if bounds is not None:
        return FrameReport(criterion="frame", verdict="frame", lower=bounds[0], upper=bounds[1],
                           method="row_sum_sufficient", tolerance=tol, diagnostics={"rows": rows})

    estimate = operator_inequality_bounds(W, R=radius, max_radius=max_radius)
    upper = bessel_bound_sufficient(W)
    diagnostics = {"rows": rows, "operator_inequality": estimate}
    if estimate["A_est"] <= tol:
        return FrameReport(criterion="frame", verdict="not_frame", lower=0.0, upper=upper,
                           method="operator_inequality", tolerance=tol, diagnostics=diagnostics,
                           witnesses=[{"k": estimate["argmin_k"], "lambda_min_scaled": estimate["A_est"]}])
    if not estimate["converged"]:
        logger.warning("frame verdict inconclusive: A_est=%.3e without convergence", estimate["A_est"])
        return FrameReport(criterion="frame", verdict="inconclusive", upper=upper,
                           method="operator_inequality", tolerance=tol, diagnostics=diagnostics)
    return FrameReport(criterion="frame", verdict="frame", lower=estimate["A_est"],
                       upper=max(estimate["B_est"], estimate["A_est"]),
                       method="operator_inequality", tolerance=tol, diagnostics=diagnostics)


def _analyze_quaternion(W: WindowFamily, tol: float) -> FrameReport:
    # only the diagonal necessary condition is available for quaternion-valued windows
    M2 = float(W.M * W.M)
    values = {k: diagonal_entry(W, k) for k in W.params.residues()}
    smallest = min(values, key=lambda k: (values[k], k))
    diagnostics = {"diagonal": [{"k": _k_list(k), "value": v} for k, v in values.items()]}
    if values[smallest] <= tol:
        return FrameReport(criterion="frame", verdict="not_frame", lower=0.0,
                           method="necessary_diagonal", tolerance=tol, diagnostics=diagnostics,
                           witnesses=[{"k": _k_list(smallest), "diagonal": values[smallest]}])
    logger.warning("quaternion-valued windows: only necessary conditions are checked")
    diagnostics["diagonal_range"] = [M2 * values[smallest], M2 * max(values.values())]
    return FrameReport(criterion="frame", verdict="inconclusive", method="necessary_diagonal",
                       tolerance=tol, diagnostics=diagnostics)
