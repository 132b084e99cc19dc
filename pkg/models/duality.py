"""
Duality of two Gabor systems with the same parameters: the row criterion,
the mixed coefficient sum (evaluated directly and in closed form), the
reconstruction identity and the periodic exponential basis of l_M.
"""
import logging
from typing import Any, Dict

import numpy as np

from models.frame_analysis import narrow_support_frame
from models.gabor_ops import TWO_PI, all_modulations, coefficient_block, translation_range
from models.matrix_fn import require_real, row0_real
from models.quaternion import Quaternion, conj, conj_array, exp_i_array, exp_j_array, hamilton, mul
from models.signal import FiniteSignal, WindowFamily, inner, random_signal, require_same_params
from utils.config import get_default_seed, get_default_trials, is_strict_mode, resolve_tolerance
from utils.errors import ConsistencyError, ParameterError

logger = logging.getLogger(__name__)


def dual_check(G: WindowFamily, H: WindowFamily, tol: float = None) -> Dict[str, Any]:
    """
    G and H are dual iff (Σ_l M_{g_l}(k) M_{h_l}^t(k))_{0,p} = [p = 0]/M² for
    every k ∈ N_N² and every p.
    """
    tol = resolve_tolerance(tol)
    require_same_params(G, H)
    require_real(G, H)
    expected_diagonal = 1.0 / (G.M * G.M)
    for k in G.params.residues():
        row = row0_real(G, H, k)
        row.setdefault((0, 0), 0.0)
        for p in sorted(row):
            expected = expected_diagonal if p == (0, 0) else 0.0
            if abs(row[p] - expected) > tol:
                return {
                    "criterion": "dual",
                    "holds": False,
                    "tolerance": tol,
                    "violation": {"k": list(k), "p": list(p), "value": row[p], "expected": expected},
                }
    return {"criterion": "dual", "holds": True, "tolerance": tol, "violation": None}


def _direct_mixed_sum(G: WindowFamily, H: WindowFamily, f: FiniteSignal, phi: FiniteSignal) -> Quaternion:
    m_pairs = all_modulations(G.params)
    total = np.zeros(4)
    for g, h in zip(G.windows, H.windows):
        shared = set(translation_range(h, phi, G.N))
        for n in translation_range(g, f, G.N):
            if n not in shared:
                continue
            # <f, atom_g> = conj(<atom_g, f>)
            left = conj_array(coefficient_block(g, n, f, G.params, m_pairs))
            right = coefficient_block(h, n, phi, G.params, m_pairs)
            total += hamilton(left, right).sum(axis=0)
    return Quaternion.from_array(total)


def _closed_form_mixed_sum(G: WindowFamily, H: WindowFamily, f: FiniteSignal, phi: FiniteSignal) -> Quaternion:
    M = G.M
    rows = {}
    total = Quaternion()
    for k, fk in f.items():
        base = (k[0] % G.N, k[1] % G.N)
        if base not in rows:
            rows[base] = row0_real(G, H, base)
        for p, value in rows[base].items():
            target = phi((k[0] + p[0] * M, k[1] + p[1] * M))
            if target.norm2() > 0.0:
                total = total + mul(conj(fk), target) * value
    return total * float(M * M)


def mixed_sum(G: WindowFamily, H: WindowFamily, f: FiniteSignal, phi: FiniteSignal,
              tol: float = None) -> Quaternion:
    """
    Σ_{l,n,m} <f, E T g_l> · <E T h_l, φ>, left factor first.

    The direct enumeration is returned; the closed form
    M² Σ_{k,p} row0(k)(p) conj(f(k)) φ(k + pM) is evaluated alongside and a
    disagreement raises ConsistencyError (or only warns outside strict mode).
    """
    tol = resolve_tolerance(tol)
    require_same_params(G, H)
    require_real(G, H)
    direct = _direct_mixed_sum(G, H, f, phi)
    closed = _closed_form_mixed_sum(G, H, f, phi)
    gap = (direct - closed).modulus()
    if gap > tol * max(1.0, direct.modulus()):
        message = f"mixed sum disagrees with its closed form by {gap:.3e}"
        if is_strict_mode():
            raise ConsistencyError(message)
        logger.warning(message)
    return direct


def reconstruction_check(G: WindowFamily, H: WindowFamily, trials: int = None, seed: int = None,
                         tol: float = None) -> Dict[str, Any]:
    """mixed_sum(G, H, f, φ) = <f, φ> for random finite f and φ."""
    tol = resolve_tolerance(tol)
    trials = get_default_trials() if trials is None else trials
    if trials < 1:
        raise ParameterError(f"trials must be at least 1, got {trials}")
    seed = get_default_seed() if seed is None else seed
    rng = np.random.default_rng(seed)
    # supports wider than M so off-row correlations are exercised
    radius = max(2, G.M)
    for trial in range(trials):
        f = random_signal(rng, radius)
        phi = random_signal(rng, radius)
        value = mixed_sum(G, H, f, phi, tol)
        expected = inner(f, phi)
        gap = (value - expected).modulus()
        if gap > tol * max(1.0, f.norm() * phi.norm()):
            return {
                "criterion": "reconstruction",
                "holds": False,
                "tolerance": tol,
                "witness": {"trial": trial, "mixed_sum": value.to_list(), "inner": expected.to_list(), "gap": gap},
            }
    return {"criterion": "reconstruction", "holds": True, "tolerance": tol, "trials": trials, "witness": None}


def periodic_exponential_basis_check(M: int, tol: float = 1e-10) -> Dict[str, Any]:
    """
    Gram matrix of the M² sequences (1/M) e^{2πi m1 k1/M} e^{2πj m2 k2/M} on
    N_M², inner product conjugate on the left.
    """
    if M < 1:
        raise ParameterError(f"M must be at least 1, got {M}")
    grid = np.array([(a, b) for a in range(M) for b in range(M)], dtype=int)
    theta_i = TWO_PI * np.outer(grid[:, 0], grid[:, 0]) / M
    theta_j = TWO_PI * np.outer(grid[:, 1], grid[:, 1]) / M
    # basis[m, k] = e^{i θ(m1, k1)} e^{j θ(m2, k2)} / M
    basis = hamilton(exp_i_array(theta_i), exp_j_array(theta_j)) / M
    gram = hamilton(conj_array(basis)[:, None, :, :], basis[None, :, :, :]).sum(axis=2)
    identity = np.zeros_like(gram)
    identity[..., 0] = np.eye(len(grid))
    deviation = float(np.max(np.abs(gram - identity)))
    return {"criterion": "periodic_exponential_basis", "M": M, "holds": deviation <= tol,
            "max_deviation": deviation, "tolerance": tol}


def canonical_dual_narrow(W: WindowFamily, tol: float = None) -> WindowFamily:
    """{S⁻¹ g_l} for a narrow-support frame, by pointwise division."""
    operator = narrow_support_frame(W, tol=tol)
    if operator.report.verdict != "frame":
        raise ParameterError("the canonical dual needs a frame; the diagonal vanishes somewhere")
    return WindowFamily(W.params, [operator.apply_S_inverse(g) for g in W.windows])
