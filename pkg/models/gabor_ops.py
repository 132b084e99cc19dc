"""
Translation, modulation, Gabor atoms, analysis coefficients, the frame
functional and the frame operator, evaluated exactly for finite-support input.

Only translates n whose shifted window support meets the support of the
analysed signal contribute; all other terms of the sums over Z² vanish, so no
truncation happens anywhere in this module.
"""
import logging
import math
from typing import Iterator, List, Optional, Tuple

import numpy as np

from models.quaternion import (
    Quaternion,
    conj_array,
    exp_i,
    exp_i_array,
    exp_j,
    exp_j_array,
    hamilton,
    inverse,
    modulus_array,
)
from models.signal import DROP_TOL, FiniteSignal, GaborParams, Point, WindowFamily
from utils.errors import ParameterError

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def translate(f: FiniteSignal, n: Point, N: int) -> FiniteSignal:
    """T_{nN} f(k) = f(k - nN)."""
    return FiniteSignal({(k[0] + n[0] * N, k[1] + n[1] * N): v for k, v in f.items()})


def _check_modulation_index(m: Point, M: int) -> None:
    if not (0 <= m[0] < M and 0 <= m[1] < M):
        raise ParameterError(f"modulation index {tuple(m)} outside N_{M}^2")


def _phases(points: np.ndarray, m: np.ndarray, M: int, sign: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Left i-phases and right j-phases for every (m, point) pair, shaped
    (len(m), len(points), 4).
    """
    theta_i = sign * TWO_PI * np.outer(m[:, 0], points[:, 0]) / M
    theta_j = sign * TWO_PI * np.outer(m[:, 1], points[:, 1]) / M
    return exp_i_array(theta_i), exp_j_array(theta_j)


def modulate(f: FiniteSignal, m: Point, M: int) -> FiniteSignal:
    """E_{m/M} f(k) = e^{2πi m1 k1/M} f(k) e^{2πj m2 k2/M}."""
    _check_modulation_index(m, M)
    if f.is_zero():
        return f
    points, values = f.as_arrays()
    left, right = _phases(points, np.array([m]), M, 1.0)
    modulated = hamilton(hamilton(left[0], values), right[0])
    return FiniteSignal.from_arrays(points, modulated)


def atom(g: FiniteSignal, m: Point, n: Point, params: GaborParams) -> FiniteSignal:
    """E_{m/M} T_{nN} g."""
    return modulate(translate(g, n, params.N), m, params.M)


def translation_range(g: FiniteSignal, h: FiniteSignal, N: int) -> List[Point]:
    """
    Every n with bounding_box(g) + nN meeting bounding_box(h), in
    lexicographic order. A superset of the translates that actually overlap.
    """
    if g.is_zero() or h.is_zero():
        return []
    g1lo, g1hi, g2lo, g2hi = g.bounding_box()
    h1lo, h1hi, h2lo, h2hi = h.bounding_box()
    n1 = range(_ceil_div(h1lo - g1hi, N), (h1hi - g1lo) // N + 1)
    n2 = range(_ceil_div(h2lo - g2hi, N), (h2hi - g2lo) // N + 1)
    return [(a, b) for a in n1 for b in n2]


def _overlap(g: FiniteSignal, n: Point, h: FiniteSignal, N: int):
    """Points k of supp(T_{nN} g) ∩ supp(h) with g(k - nN) and h(k) as arrays."""
    points, values = g.as_arrays()
    shifted = points + np.array([n[0] * N, n[1] * N])
    keep = [i for i, k in enumerate(map(tuple, shifted.tolist())) if k in h]
    if not keep:
        return None
    ks = shifted[keep]
    hv = np.array([h((int(a), int(b))).to_list() for a, b in ks], dtype=float)
    return ks, values[keep], hv


def coefficient_block(g: FiniteSignal, n: Point, h: FiniteSignal, params: GaborParams,
                       m_pairs: np.ndarray) -> np.ndarray:
    """
    <E_{m/M} T_{nN} g, h> for every m in ``m_pairs``, shape (len(m_pairs), 4).

    The factor order e^{-2πj m2 k2/M} · conj(g(k - nN)) · e^{-2πi m1 k1/M} · h(k)
    is fixed here and nowhere else.
    """
    block = np.zeros((len(m_pairs), 4))
    found = _overlap(g, n, h, params.N)
    if found is None:
        return block
    ks, gv, hv = found
    left_i, right_j = _phases(ks, m_pairs, params.M, -1.0)
    terms = hamilton(hamilton(hamilton(right_j, conj_array(gv)[None, :, :]), left_i), hv[None, :, :])
    return terms.sum(axis=1)


def all_modulations(params: GaborParams) -> np.ndarray:
    return np.array(params.modulation_indices(), dtype=int).reshape(-1, 2)


def coeff(g: FiniteSignal, m: Point, n: Point, h: FiniteSignal, params: GaborParams) -> Quaternion:
    """<E_{m/M} T_{nN} g, h>."""
    _check_modulation_index(m, params.M)
    block = coefficient_block(g, n, h, params, np.array([m], dtype=int))
    return Quaternion.from_array(block[0])


def analysis_coefficients(W: WindowFamily, h: FiniteSignal) -> Iterator[dict]:
    """Nonzero analysis coefficients as rows {l, n, m, q}, ordered by (l, n, m)."""
    m_pairs = all_modulations(W.params)
    for l, g in enumerate(W.windows):
        for n in translation_range(g, h, W.N):
            block = coefficient_block(g, n, h, W.params, m_pairs)
            moduli = modulus_array(block)
            for m, q, size in zip(m_pairs.tolist(), block, moduli):
                if size > DROP_TOL:
                    yield {"l": l, "n": list(n), "m": m, "q": q.tolist()}


def frame_functional(W: WindowFamily, h: FiniteSignal) -> float:
    """Σ_l Σ_n Σ_m |<E_{m/M} T_{nN} g_l, h>|²."""
    m_pairs = all_modulations(W.params)
    total = 0.0
    for g in W.windows:
        for n in translation_range(g, h, W.N):
            block = coefficient_block(g, n, h, W.params, m_pairs)
            total += float(np.sum(block * block))
    return total


def frame_operator_apply(W: WindowFamily, h: FiniteSignal) -> FiniteSignal:
    """
    S h = Σ_{l,n,m} E_{m/M} T_{nN} g_l · <E_{m/M} T_{nN} g_l, h>, each atom
    multiplied on the right by its coefficient.
    """
    m_pairs = all_modulations(W.params)
    points_out: List[np.ndarray] = []
    values_out: List[np.ndarray] = []
    for g in W.windows:
        if g.is_zero():
            continue
        points, values = g.as_arrays()
        for n in translation_range(g, h, W.N):
            block = coefficient_block(g, n, h, W.params, m_pairs)
            if not np.any(block):
                continue
            xs = points + np.array([n[0] * W.N, n[1] * W.N])
            left_i, right_j = _phases(xs, m_pairs, W.M, 1.0)
            atoms = hamilton(hamilton(left_i, values[None, :, :]), right_j)
            contribution = hamilton(atoms, block[:, None, :]).sum(axis=0)
            points_out.append(xs)
            values_out.append(contribution)
    if not points_out:
        return FiniteSignal.zero()
    return FiniteSignal.from_arrays(np.concatenate(points_out), np.concatenate(values_out))


def char_sum(M: int, k: int) -> float:
    """Closed form of Σ_{m ∈ N_M} e^{2π u m k/M} for u ∈ {i, j}: M if M | k, else 0."""
    if M < 1:
        raise ParameterError(f"M must be at least 1, got {M}")
    return float(M) if k % M == 0 else 0.0


def character_sum(M: int, k: int, unit: str = "i") -> Quaternion:
    """The numeric sum Σ_{m ∈ N_M} e^{2π u m k/M}."""
    if unit not in ("i", "j"):
        raise ParameterError(f"unit must be 'i' or 'j', got {unit!r}")
    exp_fn = exp_i if unit == "i" else exp_j
    total = Quaternion()
    for m in range(M):
        total = total + exp_fn(TWO_PI * m * k / M)
    return total


def commutation_probe(W: WindowFamily, h: FiniteSignal, q: Point = (1, 1),
                      point: Point = (0, 1)) -> dict:
    """
    Evaluates S(E_{q/M} h) and E_{q/M}(S h) at ``point``.

    ``right_quotient`` is S(E h)(point)⁻¹ · E(S h)(point) whenever the first
    value is nonzero.
    """
    modulated_of_S = modulate(frame_operator_apply(W, h), q, W.M)(point)
    S_of_modulated = frame_operator_apply(W, modulate(h, q, W.M))(point)
    quotient: Optional[Quaternion] = None
    if S_of_modulated.modulus() > DROP_TOL:
        quotient = inverse(S_of_modulated) * modulated_of_S
    difference = (S_of_modulated - modulated_of_S).modulus()
    logger.debug("commutation probe at %s: |S E h - E S h| = %.3e", point, difference)
    return {
        "point": list(point),
        "q": list(q),
        "S_of_modulated": S_of_modulated.to_list(),
        "modulated_of_S": modulated_of_S.to_list(),
        "difference": difference,
        "right_quotient": quotient.to_list() if quotient is not None else None,
    }
