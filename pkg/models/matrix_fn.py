"""
The matrix-valued functions M_h(k), with entries (M_h(k))_{p,n} = h(k + pM - nN),
and the aggregates Σ_l M_{g_l}(k) M_{h_l}^*(k) every criterion reads.

Sums over n ∈ Z² are evaluated over the finitely many contributing terms:
a term g(k + pM - nN) is nonzero only when k + pM - nN is a support point of g,
so the loops run over support points and recover n from them.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from models.quaternion import ZERO, Quaternion, conj, mul
from models.signal import FiniteSignal, Point, WindowFamily, require_same_params
from utils.errors import NonRealWindowError, ParameterError

logger = logging.getLogger(__name__)

Box = Tuple[int, int, int, int]


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _congruent(a: Point, b: Point, modulus: int) -> bool:
    return (a[0] - b[0]) % modulus == 0 and (a[1] - b[1]) % modulus == 0


def product_entry(g: FiniteSignal, h: FiniteSignal, k: Point, p: Point, p_prime: Point,
                  M: int, N: int, conjugate: bool = True) -> Quaternion:
    """
    (M_g(k) M_h^*(k))_{p,p'} = Σ_n g(k + pM - nN) conj(h(k + p'M - nN)).
    With ``conjugate=False`` the transpose M_h^t is used instead.
    """
    base = (k[0] + p[0] * M, k[1] + p[1] * M)
    offset = ((p_prime[0] - p[0]) * M, (p_prime[1] - p[1]) * M)
    total = ZERO
    for x, gx in g.items():
        if not _congruent(x, base, N):
            continue
        hy = h((x[0] + offset[0], x[1] + offset[1]))
        total = total + mul(gx, conj(hy) if conjugate else hy)
    return total


def row_support_box(W: WindowFamily, H: Optional[WindowFamily] = None) -> Optional[Box]:
    """
    The exact box of p outside which every row-0 entry of Σ_l M_{g_l} M_{h_l}^*
    vanishes, from the windows' bounding boxes. None when no pair of windows
    is jointly nonzero.
    """
    H = W if H is None else H
    box = None
    for g, h in zip(W.windows, H.windows):
        if g.is_zero() or h.is_zero():
            continue
        g1lo, g1hi, g2lo, g2hi = g.bounding_box()
        h1lo, h1hi, h2lo, h2hi = h.bounding_box()
        current = (
            _ceil_div(h1lo - g1hi, W.M), (h1hi - g1lo) // W.M,
            _ceil_div(h2lo - g2hi, W.M), (h2hi - g2lo) // W.M,
        )
        if box is None:
            box = current
        else:
            box = (min(box[0], current[0]), max(box[1], current[1]),
                   min(box[2], current[2]), max(box[3], current[3]))
    return box


def vanishing_radius(W: WindowFamily, H: Optional[WindowFamily] = None) -> int:
    """Smallest R such that row-0 entries vanish for max(|p1|, |p2|) > R."""
    box = row_support_box(W, H)
    if box is None:
        return 0
    return max(abs(v) for v in box)


def _residue_index(h: FiniteSignal, M: int) -> Dict[Point, List[Point]]:
    index: Dict[Point, List[Point]] = {}
    for y in h:
        index.setdefault((y[0] % M, y[1] % M), []).append(y)
    return index


def aggregate_row0(W: WindowFamily, H: Optional[WindowFamily], k: Point,
                   p_window: Optional[Sequence[Point]] = None,
                   conjugate: Optional[bool] = None) -> Dict[Point, Quaternion]:
    """
    p -> (Σ_l M_{g_l}(k) M_{h_l}^*(k))_{0,p}.

    The transpose replaces the conjugate transpose exactly when both families
    are real (where the two coincide). Without ``p_window`` every nonzero
    entry is returned; with it, exactly the requested indices are.
    """
    H = W if H is None else H
    require_same_params(W, H)
    if conjugate is None:
        conjugate = not (W.is_real and H.is_real)
    M, N = W.M, W.N
    row: Dict[Point, Quaternion] = {}
    for g, h in zip(W.windows, H.windows):
        if g.is_zero() or h.is_zero():
            continue
        h_index = _residue_index(h, M)
        for x, gx in g.items():
            if not _congruent(x, k, N):
                continue
            for y in h_index.get((x[0] % M, x[1] % M), ()):
                p = ((y[0] - x[0]) // M, (y[1] - x[1]) // M)
                hy = h(y)
                row[p] = row.get(p, ZERO) + mul(gx, conj(hy) if conjugate else hy)
    if p_window is not None:
        return {tuple(p): row.get(tuple(p), ZERO) for p in p_window}
    return {p: row[p] for p in sorted(row)}


def require_real(*families: WindowFamily) -> None:
    for family in families:
        if not family.is_real:
            raise NonRealWindowError("this criterion requires real-valued windows")


def row0_real(W: WindowFamily, H: Optional[WindowFamily], k: Point) -> Dict[Point, float]:
    """Row 0 of Σ_l M_{g_l}(k) M_{h_l}^t(k) for real families, as floats."""
    H = W if H is None else H
    require_real(W, H)
    row = aggregate_row0(W, H, (k[0] % W.N, k[1] % W.N), conjugate=False)
    return {p: q.a0 for p, q in row.items()}


def periodic_rows(W: WindowFamily, H: Optional[WindowFamily] = None) -> Dict[Point, Dict[Point, float]]:
    """row0_real at every k ∈ N_N², which covers Z² by N-periodicity."""
    return {k: row0_real(W, H, k) for k in W.params.residues()}


def diagonal_entry(W: WindowFamily, k: Point) -> float:
    """(Σ_l M_{g_l}(k) M_{g_l}^*(k))_{0,0} = Σ_l Σ_n |g_l(k - nN)|², for any windows."""
    total = 0.0
    for g in W.windows:
        for x, gx in g.items():
            if _congruent(x, k, W.N):
                total += gx.norm2()
    return total


@dataclass
class AggregateMatrix:
    """Principal truncation of Σ_l M_{g_l}(k) M_{g_l}^t(k) over p, p' ∈ [-R, R]²."""

    k: Point
    radius: int
    indices: List[Point]
    values: np.ndarray = field(repr=False)

    def entry(self, p: Point, p_prime: Point) -> float:
        position = {q: i for i, q in enumerate(self.indices)}
        return float(self.values[position[tuple(p)], position[tuple(p_prime)]])

    def eigenvalue_range(self) -> Tuple[float, float]:
        """
        Extreme eigenvalues of the symmetric truncation

        Returns:
            (λ_min, λ_max)
        """
        eigenvalues = np.linalg.eigvalsh(self.values)
        return float(eigenvalues[0]), float(eigenvalues[-1])

    def to_dict(self) -> dict:
        entries = []
        for a, p in enumerate(self.indices):
            for b, p_prime in enumerate(self.indices):
                value = float(self.values[a, b])
                if value != 0.0:
                    entries.append({"p": list(p), "p_prime": list(p_prime), "value": value})
        return {
            "k": list(self.k),
            "radius": self.radius,
            "size": len(self.indices),
            "entries": entries,
        }


def truncation_indices(R: int) -> List[Point]:
    return [(a, b) for a in range(-R, R + 1) for b in range(-R, R + 1)]


def aggregate_truncated(W: WindowFamily, k: Point, R: int) -> AggregateMatrix:
    """
    Entry (p, p') equals Σ_l Σ_n g_l(k + pM - nN) g_l(k + p'M - nN), which is
    row 0 at k + pM evaluated at p' - p.
    """
    require_real(W)
    if R < 0:
        raise ParameterError(f"truncation radius must be non-negative, got {R}")
    indices = truncation_indices(R)
    position = {p: i for i, p in enumerate(indices)}
    rows: Dict[Point, Dict[Point, float]] = {}
    values = np.zeros((len(indices), len(indices)))
    for a, p in enumerate(indices):
        base = ((k[0] + p[0] * W.M) % W.N, (k[1] + p[1] * W.M) % W.N)
        if base not in rows:
            rows[base] = row0_real(W, W, base)
        for d, value in rows[base].items():
            b = position.get((p[0] + d[0], p[1] + d[1]))
            if b is not None:
                values[a, b] = value
    return AggregateMatrix(k=tuple(k), radius=R, indices=indices, values=values)


def f1_f2_decomposition(W: WindowFamily, h: FiniteSignal) -> Tuple[float, float]:
    """
    F1(h) = M² Σ_k |h(k)|² row0(k)(0) and
    F2(h) = M² Σ_k Σ_{p≠0} conj(h(k)) h(k + pM) row0(k)(p),
    whose sum is the frame functional for real windows.
    """
    require_real(W)
    M2 = float(W.M * W.M)
    rows: Dict[Point, Dict[Point, float]] = {}
    f1 = 0.0
    f2 = ZERO
    for k, hk in h.items():
        base = (k[0] % W.N, k[1] % W.N)
        if base not in rows:
            rows[base] = row0_real(W, W, base)
        for p, value in rows[base].items():
            if p == (0, 0):
                f1 += hk.norm2() * value
                continue
            hy = h((k[0] + p[0] * W.M, k[1] + p[1] * W.M))
            if hy.norm2() > 0.0:
                f2 = f2 + mul(conj(hk), hy) * value
    if not f2.is_real(1e-8 * max(1.0, f2.modulus())):
        logger.warning("F2 carries an imaginary residue of %.3e", f2.modulus() - abs(f2.a0))
    return M2 * f1, M2 * f2.a0
