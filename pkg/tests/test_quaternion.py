import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from models.quaternion import (
    I,
    J,
    K,
    ONE,
    ZERO,
    Quaternion,
    conj,
    conj_array,
    exp_i,
    exp_j,
    hamilton,
    inverse,
    modulus,
    mul,
    product,
)

component = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
quaternions = st.builds(Quaternion, component, component, component, component)


def test_unit_products():
    assert I * I == -ONE
    assert J * J == -ONE
    assert K * K == -ONE
    assert I * J == K
    assert J * K == I
    assert K * I == J
    assert J * I == -K


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        inverse(ZERO)


def test_exponentials_are_unit():
    assert modulus(exp_i(1.3)) == pytest.approx(1.0)
    assert exp_j(math.pi).isclose(-ONE, 1e-12)
    assert exp_i(math.pi / 2).isclose(I, 1e-12)


def test_product_is_left_to_right():
    assert product([I, J, K]) == mul(mul(I, J), K)
    assert product([]) == ONE


@settings(deadline=None)
@given(quaternions, quaternions, quaternions)
def test_associativity(p, q, r):
    assert ((p * q) * r).isclose(p * (q * r), 1e-9 * (1 + p.modulus() * q.modulus() * r.modulus()))


@settings(deadline=None)
@given(quaternions, quaternions)
def test_modulus_is_multiplicative(p, q):
    assert (p * q).modulus() == pytest.approx(p.modulus() * q.modulus(), rel=1e-9, abs=1e-9)


@settings(deadline=None)
@given(quaternions, quaternions)
def test_conjugate_reverses_products(p, q):
    assert conj(p * q).isclose(conj(q) * conj(p), 1e-9 * (1 + p.modulus() * q.modulus()))


@settings(deadline=None)
@given(quaternions)
def test_inverse(q):
    if q.modulus() < 1e-3:
        return
    assert (q * inverse(q)).isclose(ONE, 1e-9)
    assert (inverse(q) * q).isclose(ONE, 1e-9)


@settings(deadline=None)
@given(quaternions, quaternions)
def test_vectorized_product_matches_scalar(p, q):
    expected = (p * q).to_array()
    np.testing.assert_allclose(hamilton(p.to_array(), q.to_array()), expected, atol=1e-9)
    np.testing.assert_allclose(conj_array(p.to_array()), conj(p).to_array())


def test_real_scalars_commute():
    q = Quaternion(1.0, -2.0, 0.5, 3.0)
    assert 2.5 * q == q * 2.5
    assert (q / 2).isclose(Quaternion(0.5, -1.0, 0.25, 1.5))


def test_from_list_rejects_wrong_length():
    with pytest.raises(ValueError):
        Quaternion.from_list([1.0, 2.0])
