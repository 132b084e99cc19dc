"""
Brute-force reference evaluations used by the test suite and `verify`.

Everything here is derived from the definitions with plain scalar loops:
atoms are materialized point by point and inner products are summed
directly. This module must not import the criterion modules (gabor_ops,
matrix_fn, frame_analysis, duality, stability) it is used to validate.
"""
import math
from typing import Dict, List, Sequence, Set, Tuple

from models.quaternion import ZERO, Quaternion, exp_i, exp_j
from models.signal import FiniteSignal, Point, WindowFamily

AtomIndex = Tuple[int, Point, Point]  # (l, m, n)


def _atom_value(g: FiniteSignal, m: Point, n: Point, k: Point, M: int, N: int) -> Quaternion:
    shifted = g((k[0] - n[0] * N, k[1] - n[1] * N))
    if shifted.norm2() == 0.0:
        return ZERO
    left = exp_i(2.0 * math.pi * m[0] * k[0] / M)
    right = exp_j(2.0 * math.pi * m[1] * k[1] / M)
    return left * shifted * right


def _atom(g: FiniteSignal, m: Point, n: Point, M: int, N: int) -> Dict[Point, Quaternion]:
    out = {}
    for x in g:
        k = (x[0] + n[0] * N, x[1] + n[1] * N)
        out[k] = _atom_value(g, m, n, k, M, N)
    return out


def _meeting_translates(g: FiniteSignal, f: FiniteSignal, N: int) -> Set[Point]:
    """Every n for which some x ∈ supp g lands on supp f after the shift nN."""
    found = set()
    for x in g:
        for y in f:
            d1, d2 = y[0] - x[0], y[1] - x[1]
            if d1 % N == 0 and d2 % N == 0:
                found.add((d1 // N, d2 // N))
    return found


def _inner_with_atom(atom: Dict[Point, Quaternion], f: FiniteSignal) -> Quaternion:
    """<atom, f>."""
    total = ZERO
    for k, value in atom.items():
        fk = f(k)
        if fk.norm2() > 0.0:
            total = total + value.conj() * fk
    return total


def oracle_frame_functional(W: WindowFamily, h: FiniteSignal) -> float:
    M, N = W.M, W.N
    total = 0.0
    for g in W.windows:
        for n in sorted(_meeting_translates(g, h, N)):
            for m1 in range(M):
                for m2 in range(M):
                    c = _inner_with_atom(_atom(g, (m1, m2), n, M, N), h)
                    total += c.norm2()
    return total


def oracle_gram(W: WindowFamily, indices: Sequence[AtomIndex]) -> List[List[Quaternion]]:
    """Pairwise <atom_a, atom_b> over the given (l, m, n) indices."""
    M, N = W.M, W.N
    atoms = [_atom(W.windows[l], tuple(m), tuple(n), M, N) for l, m, n in indices]
    gram = []
    for a in atoms:
        row = []
        for b in atoms:
            total = ZERO
            for k, value in a.items():
                if k in b:
                    total = total + value.conj() * b[k]
            row.append(total)
        gram.append(row)
    return gram


def oracle_mixed_sum(G: WindowFamily, H: WindowFamily, f: FiniteSignal, phi: FiniteSignal) -> Quaternion:
    """Σ_{l,n,m} <f, E T g_l> · <E T h_l, φ>, multiplied in that order."""
    M, N = G.M, G.N
    total = ZERO
    for g, h in zip(G.windows, H.windows):
        for n in sorted(_meeting_translates(g, f, N) & _meeting_translates(h, phi, N)):
            for m1 in range(M):
                for m2 in range(M):
                    m = (m1, m2)
                    # <f, atom> is the conjugate of <atom, f>
                    first = _inner_with_atom(_atom(g, m, n, M, N), f).conj()
                    second = _inner_with_atom(_atom(h, m, n, M, N), phi)
                    total = total + first * second
    return total
