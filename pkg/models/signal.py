"""
Finitely supported quaternionic signals on Z², Gabor parameters and window families.
"""
import logging
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from models.quaternion import ONE, ZERO, Quaternion, conj, mul
from utils.errors import ParameterError, ZeroSignalError

logger = logging.getLogger(__name__)

Point = Tuple[int, int]
BoundingBox = Tuple[int, int, int, int]  # (min k1, max k1, min k2, max k2)

# values below this modulus are treated as structural zeros
DROP_TOL = 1e-12
IMAG_TOL = 1e-12


class FiniteSignal:
    """
    A map Z² -> H with finite support. Stored values are nonzero and kept in
    lexicographic order of their index so iteration (and every report built
    from it) is deterministic. Instances are treated as immutable.
    """

    __slots__ = ("_entries", "_arrays", "_box")

    def __init__(self, entries: Optional[Mapping[Point, Quaternion]] = None):
        cleaned: Dict[Point, Quaternion] = {}
        for k, q in (entries or {}).items():
            if not isinstance(q, Quaternion):
                q = Quaternion.real(q)
            if q.modulus() < DROP_TOL:
                continue
            cleaned[(int(k[0]), int(k[1]))] = q
        self._entries = {k: cleaned[k] for k in sorted(cleaned)}
        self._arrays = None
        self._box = None

    @classmethod
    def zero(cls) -> "FiniteSignal":
        return cls({})

    @classmethod
    def delta(cls, k: Point, value: Quaternion = ONE) -> "FiniteSignal":
        return cls({tuple(k): value})

    @classmethod
    def indicator(cls, points: Iterable[Point], value=1.0) -> "FiniteSignal":
        return cls({tuple(p): value for p in points})

    @classmethod
    def box(cls, rows: Iterable[int], cols: Iterable[int], value=1.0) -> "FiniteSignal":
        """Indicator of the product set rows × cols, scaled by ``value``."""
        return cls.indicator(cartesian(list(rows), list(cols)), value)

    @classmethod
    def from_arrays(cls, points: np.ndarray, values: np.ndarray) -> "FiniteSignal":
        acc: Dict[Point, np.ndarray] = {}
        for point, value in zip(np.asarray(points, dtype=int), np.asarray(values, dtype=float)):
            key = (int(point[0]), int(point[1]))
            if key in acc:
                acc[key] = acc[key] + value
            else:
                acc[key] = np.array(value, dtype=float)
        return cls({k: Quaternion.from_array(v) for k, v in acc.items()})

    def __call__(self, k: Point) -> Quaternion:
        return self._entries.get((k[0], k[1]), ZERO)

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[Point]:
        return iter(self._entries)

    def __contains__(self, k) -> bool:
        return (k[0], k[1]) in self._entries

    def items(self):
        return self._entries.items()

    def support(self) -> List[Point]:
        return list(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def bounding_box(self) -> Optional[BoundingBox]:
        if self._box is None and self._entries:
            k1 = [k[0] for k in self._entries]
            k2 = [k[1] for k in self._entries]
            self._box = (min(k1), max(k1), min(k2), max(k2))
        return self._box

    def as_arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        """Support points as an (n, 2) int array and values as an (n, 4) float array."""
        if self._arrays is None:
            points = np.array(list(self._entries), dtype=int).reshape(-1, 2)
            values = np.array([q.to_list() for q in self._entries.values()], dtype=float).reshape(-1, 4)
            self._arrays = (points, values)
        return self._arrays

    def norm2(self) -> float:
        return sum(q.norm2() for q in self._entries.values())

    def norm(self) -> float:
        return float(np.sqrt(self.norm2()))

    def is_real(self, tol: float = IMAG_TOL) -> bool:
        return all(q.is_real(tol) for q in self._entries.values())

    def right_scale(self, q: Quaternion) -> "FiniteSignal":
        """f·q, the right module action."""
        return FiniteSignal({k: mul(v, q) for k, v in self._entries.items()})

    def left_scale(self, q: Quaternion) -> "FiniteSignal":
        return FiniteSignal({k: mul(q, v) for k, v in self._entries.items()})

    def map_values(self, fn) -> "FiniteSignal":
        return FiniteSignal({k: fn(k, v) for k, v in self._entries.items()})

    def __add__(self, other: "FiniteSignal") -> "FiniteSignal":
        acc = dict(self._entries)
        for k, v in other.items():
            acc[k] = acc.get(k, ZERO) + v
        return FiniteSignal(acc)

    def __sub__(self, other: "FiniteSignal") -> "FiniteSignal":
        return self + other * -1.0

    def __mul__(self, scalar: float) -> "FiniteSignal":
        return FiniteSignal({k: v * float(scalar) for k, v in self._entries.items()})

    __rmul__ = __mul__

    def isclose(self, other: "FiniteSignal", tol: float = 1e-9) -> bool:
        keys = set(self._entries) | set(other._entries)
        return all((self(k) - other(k)).modulus() <= tol for k in keys)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteSignal) and self._entries == other._entries

    def __hash__(self):
        return hash(tuple(self._entries.items()))

    def __repr__(self) -> str:
        return f"FiniteSignal({len(self._entries)} entries, box={self.bounding_box()})"


@dataclass(frozen=True)
class GaborParams:
    """The triple (L, M, N): window count, modulation order, translation step."""

    L: int
    M: int
    N: int

    def __post_init__(self):
        for name in ("L", "M", "N"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value <= 0:
                raise ParameterError(f"{name} must be a positive integer, got {value!r}")

    def modulation_indices(self) -> List[Point]:
        """N_M², in lexicographic order."""
        return [(m1, m2) for m1 in range(self.M) for m2 in range(self.M)]

    def residues(self) -> List[Point]:
        """N_N², the base points every periodic scan runs over."""
        return [(k1, k2) for k1 in range(self.N) for k2 in range(self.N)]

    def window_indices(self) -> List[int]:
        return list(range(self.L))

    def to_dict(self) -> dict:
        return {"L": int(self.L), "M": int(self.M), "N": int(self.N)}


class WindowFamily:
    """The generating windows {g_l} of the Gabor system G(g, L, M, N)."""

    def __init__(self, params: GaborParams, windows: Sequence[FiniteSignal]):
        windows = tuple(windows)
        if len(windows) != params.L:
            raise ParameterError(f"expected L={params.L} windows, got {len(windows)}")
        self.params = params
        self.windows = windows
        self.is_real = all(is_real_valued(w) for w in windows)

    @classmethod
    def from_windows(cls, windows: Sequence[FiniteSignal], M: int, N: int) -> "WindowFamily":
        return cls(GaborParams(len(windows), M, N), windows)

    @property
    def M(self) -> int:
        return self.params.M

    @property
    def N(self) -> int:
        return self.params.N

    @property
    def L(self) -> int:
        return self.params.L

    def __iter__(self) -> Iterator[FiniteSignal]:
        return iter(self.windows)

    def __len__(self) -> int:
        return len(self.windows)

    def scaled(self, factor: float) -> "WindowFamily":
        return WindowFamily(self.params, [w * factor for w in self.windows])

    def difference(self, other: "WindowFamily") -> "WindowFamily":
        """The family {g_l - h_l}."""
        require_same_params(self, other)
        return WindowFamily(self.params, [g - h for g, h in zip(self.windows, other.windows)])

    def norm_sum(self) -> float:
        return sum(w.norm2() for w in self.windows)

    def __repr__(self) -> str:
        return f"WindowFamily(L={self.L}, M={self.M}, N={self.N}, real={self.is_real})"


def require_same_params(first: WindowFamily, second: WindowFamily) -> None:
    if first.params != second.params:
        raise ParameterError(
            f"window families have different parameters: {first.params.to_dict()} vs {second.params.to_dict()}"
        )


def inner(f: FiniteSignal, g: FiniteSignal) -> Quaternion:
    """<f, g> = Σ conj(f(k)) g(k), conjugate on the left."""
    if len(g) < len(f):
        keys = [k for k in g if k in f]
    else:
        keys = [k for k in f if k in g]
    total = ZERO
    for k in keys:
        total = total + mul(conj(f(k)), g(k))
    return total


def _span(values: List[int]) -> int:
    return max(values) - min(values)


def supp_width(g: FiniteSignal) -> int:
    """
    Largest max-min span of the support along any row (fixed k2) or any
    column (fixed k1).
    """
    if g.is_zero():
        raise ZeroSignalError("supp_width is undefined for the zero signal")
    rows: Dict[int, List[int]] = {}
    cols: Dict[int, List[int]] = {}
    for k1, k2 in g:
        rows.setdefault(k2, []).append(k1)
        cols.setdefault(k1, []).append(k2)
    return max(max(_span(v) for v in rows.values()), max(_span(v) for v in cols.values()))


def is_real_valued(g: FiniteSignal, tol: float = IMAG_TOL) -> bool:
    return g.is_real(tol)


def random_signal(rng: np.random.Generator, radius: int, real: bool = False,
                  density: float = 0.6, center: Point = (0, 0)) -> FiniteSignal:
    """
    Random finite signal supported in the square of the given radius around
    ``center``. At least one point is always populated.
    """
    side = 2 * radius + 1
    mask = rng.random((side, side)) < density
    if not mask.any():
        mask[rng.integers(side), rng.integers(side)] = True
    entries = {}
    for a, b in zip(*np.nonzero(mask)):
        k = (int(a) - radius + center[0], int(b) - radius + center[1])
        if real:
            entries[k] = Quaternion.real(rng.normal())
        else:
            entries[k] = Quaternion.from_array(rng.normal(size=4))
    return FiniteSignal(entries)


def random_real_window(rng: np.random.Generator, low: int, high: int, density: float = 0.5) -> FiniteSignal:
    """Random real window supported in [low, high]²."""
    side = high - low + 1
    mask = rng.random((side, side)) < density
    entries = {}
    for a, b in zip(*np.nonzero(mask)):
        entries[(int(a) + low, int(b) + low)] = Quaternion.real(rng.uniform(-1.0, 1.0))
    return FiniteSignal(entries)
