import numpy as np
import pytest

from spinqc.pulse import demo_system
from spinqc.register import QuantumState


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


@pytest.fixture
def demo():
    return demo_system()


def random_unitary(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(a)
    d = np.diag(r)
    return q * (d / np.abs(d))[None, :]


def random_state(rng, n):
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return QuantumState(n, v / np.linalg.norm(v))
