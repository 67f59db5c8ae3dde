from fractions import Fraction

import numpy as np
import pytest

import braidforge.nleibniz as nl
import braidforge.nrack as nr
from braidforge.tensor import TensorOperator

ONE = Fraction(1)


@pytest.fixture(scope="session")
def t3():
    """Ternary bracket on k^3 with [e_0, e_1, e_1] = e_2, everything else zero."""
    return nl.certify(nl.NLeibnizAlgebra(3, 3, {(0, 1, 1): {2: 1}}))


@pytest.fixture(scope="session")
def t3_bad():
    """T3 plus [e_2, e_1, e_1] = e_1, which breaks the fundamental identity."""
    return nl.NLeibnizAlgebra(3, 3, {(0, 1, 1): {2: 1}, (2, 1, 1): {1: 1}})


@pytest.fixture(scope="session")
def a3():
    """Binary Leibniz bracket on k^3 with {e_0, e_1} = e_2."""
    return nl.certify(nl.NLeibnizAlgebra(2, 3, {(0, 1): {2: 1}}))


@pytest.fixture(scope="session")
def t3bar(t3):
    return nl.adjoin_unit(t3)


@pytest.fixture(scope="session")
def s3():
    return nr.symmetric_group(3)


@pytest.fixture(scope="session")
def conj3(s3):
    return nr.conjugation_nrack(s3, 3)


@pytest.fixture(scope="session")
def flip_rack():
    return nr.cyclic_rack(2)


def to_dense(op: TensorOperator) -> np.ndarray:
    out = np.empty((op.codomain_shape.total, op.domain_shape.total), dtype=object)
    out[:] = Fraction(0) if op.mode == "exact" else 0.0
    for (r, c), v in op.entries.items():
        out[r, c] = v
    return out


def dense_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and bool((a == b).all())
