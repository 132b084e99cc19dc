"""
Quaternion arithmetic with the conventions used throughout the analyzer.

A quaternion ``a0 + a1 i + a2 j + a3 k`` is stored as four doubles. The scalar
class ``Quaternion`` is used wherever values are handled one at a time; the
``*_array`` helpers operate on numpy arrays whose last axis has length 4 and
are what the vectorized Gabor code runs on.
"""
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

DEFAULT_TOL = 1e-9

Real = Union[int, float]


@dataclass(frozen=True)
class Quaternion:
    """
    Immutable quaternion value. Multiplication is the Hamilton product
    (i² = j² = k² = -1, ij = k, jk = i, ki = j) and is not commutative.
    """

    a0: float = 0.0
    a1: float = 0.0
    a2: float = 0.0
    a3: float = 0.0

    @classmethod
    def from_list(cls, values: Sequence[Real]) -> "Quaternion":
        if len(values) != 4:
            raise ValueError(f"a quaternion needs 4 components, got {len(values)}")
        return cls(float(values[0]), float(values[1]), float(values[2]), float(values[3]))

    @classmethod
    def from_array(cls, values: np.ndarray) -> "Quaternion":
        return cls(float(values[0]), float(values[1]), float(values[2]), float(values[3]))

    @classmethod
    def real(cls, value: Real) -> "Quaternion":
        return cls(float(value), 0.0, 0.0, 0.0)

    def to_list(self) -> list:
        return [self.a0, self.a1, self.a2, self.a3]

    def to_array(self) -> np.ndarray:
        return np.array([self.a0, self.a1, self.a2, self.a3], dtype=float)

    def __iter__(self):
        return iter((self.a0, self.a1, self.a2, self.a3))

    def __add__(self, other: "Quaternion") -> "Quaternion":
        other = _coerce(other)
        return Quaternion(self.a0 + other.a0, self.a1 + other.a1,
                          self.a2 + other.a2, self.a3 + other.a3)

    __radd__ = __add__

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        other = _coerce(other)
        return Quaternion(self.a0 - other.a0, self.a1 - other.a1,
                          self.a2 - other.a2, self.a3 - other.a3)

    def __rsub__(self, other: Real) -> "Quaternion":
        return _coerce(other) - self

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.a0, -self.a1, -self.a2, -self.a3)

    def __mul__(self, other: Union["Quaternion", Real]) -> "Quaternion":
        if isinstance(other, Quaternion):
            return mul(self, other)
        if isinstance(other, (int, float, np.floating, np.integer)):
            s = float(other)
            return Quaternion(self.a0 * s, self.a1 * s, self.a2 * s, self.a3 * s)
        return NotImplemented

    def __rmul__(self, other: Real) -> "Quaternion":
        # only reached for real scalars, which commute with every quaternion
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self * other
        return NotImplemented

    def __truediv__(self, other: Real) -> "Quaternion":
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self * (1.0 / float(other))
        return NotImplemented

    def conj(self) -> "Quaternion":
        return conj(self)

    def norm2(self) -> float:
        return self.a0 * self.a0 + self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3

    def modulus(self) -> float:
        return modulus(self)

    def inverse(self) -> "Quaternion":
        return inverse(self)

    def is_real(self, tol: float = 1e-12) -> bool:
        return abs(self.a1) <= tol and abs(self.a2) <= tol and abs(self.a3) <= tol

    def isclose(self, other: Union["Quaternion", Real], tol: float = DEFAULT_TOL) -> bool:
        return (self - _coerce(other)).modulus() <= tol

    def __repr__(self) -> str:
        return f"Quaternion({self.a0:g}, {self.a1:g}, {self.a2:g}, {self.a3:g})"


def _coerce(value: Union[Quaternion, Real]) -> Quaternion:
    if isinstance(value, Quaternion):
        return value
    return Quaternion.real(value)


ZERO = Quaternion(0.0, 0.0, 0.0, 0.0)
ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    return Quaternion(
        p.a0 * q.a0 - p.a1 * q.a1 - p.a2 * q.a2 - p.a3 * q.a3,
        p.a0 * q.a1 + p.a1 * q.a0 + p.a2 * q.a3 - p.a3 * q.a2,
        p.a0 * q.a2 - p.a1 * q.a3 + p.a2 * q.a0 + p.a3 * q.a1,
        p.a0 * q.a3 + p.a1 * q.a2 - p.a2 * q.a1 + p.a3 * q.a0,
    )


def conj(q: Quaternion) -> Quaternion:
    return Quaternion(q.a0, -q.a1, -q.a2, -q.a3)


def modulus(q: Quaternion) -> float:
    return math.sqrt(q.norm2())


def inverse(q: Quaternion) -> Quaternion:
    n2 = q.norm2()
    if n2 == 0.0:
        raise ZeroDivisionError("cannot invert the zero quaternion")
    return conj(q) / n2


def exp_i(theta: float) -> Quaternion:
    return Quaternion(math.cos(theta), math.sin(theta), 0.0, 0.0)


def exp_j(theta: float) -> Quaternion:
    return Quaternion(math.cos(theta), 0.0, math.sin(theta), 0.0)


def product(factors: Iterable[Quaternion]) -> Quaternion:
    """Left-to-right product of the given factors."""
    result = ONE
    for factor in factors:
        result = mul(result, factor)
    return result


# Vectorized helpers: arrays of shape (..., 4), broadcasting on the leading axes.

def hamilton(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    p0, p1, p2, p3 = p[..., 0], p[..., 1], p[..., 2], p[..., 3]
    q0, q1, q2, q3 = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    return np.stack([
        p0 * q0 - p1 * q1 - p2 * q2 - p3 * q3,
        p0 * q1 + p1 * q0 + p2 * q3 - p3 * q2,
        p0 * q2 - p1 * q3 + p2 * q0 + p3 * q1,
        p0 * q3 + p1 * q2 - p2 * q1 + p3 * q0,
    ], axis=-1)


def conj_array(q: np.ndarray) -> np.ndarray:
    out = np.array(q, dtype=float, copy=True)
    out[..., 1:] *= -1.0
    return out


def exp_i_array(theta: np.ndarray) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    zeros = np.zeros_like(theta)
    return np.stack([np.cos(theta), np.sin(theta), zeros, zeros], axis=-1)


def exp_j_array(theta: np.ndarray) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    zeros = np.zeros_like(theta)
    return np.stack([np.cos(theta), zeros, np.sin(theta), zeros], axis=-1)


def modulus_array(q: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(np.asarray(q, dtype=float) ** 2, axis=-1))
