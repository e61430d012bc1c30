"""Hypothesis strategies for 2x2 unitaries."""

import math

import numpy as np
from hypothesis import strategies as st

from mcgate import algebra
from mcgate.algebra import UnitaryMatrix2

angles = st.floats(min_value=-math.pi, max_value=math.pi, allow_nan=False, allow_infinity=False)
positive_angles = st.floats(min_value=1e-3, max_value=math.pi, allow_nan=False)
epsilons = st.floats(min_value=1e-5, max_value=1.5, allow_nan=False)


@st.composite
def u2_matrices(draw) -> UnitaryMatrix2:
    """e^{i alpha} Rz(beta) Ry(gamma) Rz(delta) over random Euler angles."""
    alpha, beta, gamma, delta = (draw(angles) for _ in range(4))
    return algebra.ZyzAngles(alpha, beta, gamma, delta).matrix()


@st.composite
def su2_matrices(draw) -> UnitaryMatrix2:
    beta, gamma, delta = (draw(angles) for _ in range(3))
    return algebra.rz(beta) @ algebra.ry(gamma) @ algebra.rz(delta)


def real_secondary_su2(phi: float, mu: float) -> UnitaryMatrix2:
    """cos(phi) I + sin(phi) (cos(mu) [[0,-1],[1,0]] - i sin(mu) Z)."""
    c, s = math.cos(phi), math.sin(phi)
    m = c * np.eye(2) + s * (math.cos(mu) * np.array([[0, -1], [1, 0]]) - 1j * math.sin(mu) * np.diag([1, -1]))
    return UnitaryMatrix2(m)


@st.composite
def real_secondary_matrices(draw) -> UnitaryMatrix2:
    return real_secondary_su2(draw(angles), draw(angles))
