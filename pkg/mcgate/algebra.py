#!/usr/bin/env python3
"""
Exact 2x2 unitary algebra.

Eigendecomposition, principal 2^j-th roots, the spectral error metric and
base-control planning, plus the factorizations the synthesis modules need:
ZYZ Euler angles, the ABC form behind the two-CNOT controlled gate, and the
interleave solver for the four-MCX SU(2) scheme.

Conventions: Rz(t) = diag(e^{-it/2}, e^{it/2}), Ry(t) = exp(-i t Y / 2),
Rx(t) = exp(-i t X / 2), phase(a) = diag(1, e^{ia}). Eigenphases live in
(-pi, pi]; an eigenvalue of exactly -1 gets phase +pi.
"""

import cmath
import json
import math
import re
from dataclasses import dataclass
from typing import Any, Dict, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import linalg

from .errors import NonUnitaryError, PreconditionError

CONSTRUCTION_TOL = 1e-8
VERIFY_TOL = 1e-10
_TINY = 1e-12

MatrixLike = Union["UnitaryMatrix2", np.ndarray, Sequence[Sequence[complex]]]


class UnitaryMatrix2:
    """Immutable 2x2 complex unitary."""

    __slots__ = ("_m",)

    def __init__(self, entries: Any, check: bool = True):
        m = np.array(entries, dtype=complex)
        if m.shape != (2, 2):
            raise PreconditionError(f"expected a 2x2 matrix, got shape {m.shape}")
        if not np.isfinite(m).all():
            raise NonUnitaryError(float("nan"), CONSTRUCTION_TOL)
        if check:
            residual = unitarity_residual(m)
            if not residual <= CONSTRUCTION_TOL:
                raise NonUnitaryError(residual, CONSTRUCTION_TOL)
        m.setflags(write=False)
        self._m = m

    @property
    def array(self) -> np.ndarray:
        return self._m

    def dagger(self) -> "UnitaryMatrix2":
        return UnitaryMatrix2(self._m.conj().T, check=False)

    def det(self) -> complex:
        m = self._m
        return complex(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])

    def __matmul__(self, other: "UnitaryMatrix2") -> "UnitaryMatrix2":
        return UnitaryMatrix2(self._m @ as_array(other), check=False)

    def __getitem__(self, index):
        return self._m[index]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UnitaryMatrix2):
            return NotImplemented
        return bool(np.array_equal(self._m, other._m))

    def __hash__(self) -> int:
        return hash(self._m.tobytes())

    def is_close(self, other: MatrixLike, atol: float = VERIFY_TOL) -> bool:
        return bool(np.allclose(self._m, as_array(other), rtol=0.0, atol=atol))

    def is_identity(self, atol: float = _TINY) -> bool:
        return self.is_close(np.eye(2), atol=atol)

    def to_list(self):
        return [[[float(z.real), float(z.imag)] for z in row] for row in self._m]

    @classmethod
    def from_list(cls, data) -> "UnitaryMatrix2":
        try:
            rows = [[complex(float(re_), float(im)) for re_, im in row] for row in data]
        except (TypeError, ValueError) as e:
            raise PreconditionError(f"matrix literal must be [[[re,im],[re,im]],...]: {e}")
        return cls(rows)

    def __repr__(self) -> str:
        return f"UnitaryMatrix2({self._m.tolist()!r})"


def as_array(u: MatrixLike) -> np.ndarray:
    if isinstance(u, UnitaryMatrix2):
        return u.array
    return np.asarray(u, dtype=complex)


def unitarity_residual(m: np.ndarray) -> float:
    """Largest entry of |M M^dagger - I|."""
    return float(np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0]))))


def _checked(u: MatrixLike) -> UnitaryMatrix2:
    if isinstance(u, UnitaryMatrix2):
        return u
    return UnitaryMatrix2(u)


# =============================================================================
# NAMED GATES
# =============================================================================
def rx(theta: float) -> UnitaryMatrix2:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return UnitaryMatrix2([[c, -1j * s], [-1j * s, c]], check=False)


def ry(theta: float) -> UnitaryMatrix2:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return UnitaryMatrix2([[c, -s], [s, c]], check=False)


def rz(theta: float) -> UnitaryMatrix2:
    return UnitaryMatrix2(
        [[cmath.exp(-0.5j * theta), 0], [0, cmath.exp(0.5j * theta)]], check=False
    )


def phase(alpha: float) -> UnitaryMatrix2:
    return UnitaryMatrix2([[1, 0], [0, cmath.exp(1j * alpha)]], check=False)


def u3(theta: float, phi: float, lam: float) -> UnitaryMatrix2:
    """OpenQASM 2.0 u3: e^{i(phi+lam)/2} Rz(phi) Ry(theta) Rz(lam)."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return UnitaryMatrix2(
        [
            [c, -cmath.exp(1j * lam) * s],
            [cmath.exp(1j * phi) * s, cmath.exp(1j * (phi + lam)) * c],
        ],
        check=False,
    )


I2 = UnitaryMatrix2(np.eye(2), check=False)
X = UnitaryMatrix2([[0, 1], [1, 0]], check=False)
Y = UnitaryMatrix2([[0, -1j], [1j, 0]], check=False)
Z = UnitaryMatrix2([[1, 0], [0, -1]], check=False)
H = UnitaryMatrix2(np.array([[1, 1], [1, -1]]) / math.sqrt(2), check=False)
S = phase(math.pi / 2)
SDG = phase(-math.pi / 2)
T = phase(math.pi / 4)
TDG = phase(-math.pi / 4)

NAMED_GATES: Dict[str, UnitaryMatrix2] = {
    "i": I2,
    "id": I2,
    "x": X,
    "y": Y,
    "z": Z,
    "h": H,
    "s": S,
    "sdg": SDG,
    "t": T,
    "tdg": TDG,
}

_ROTATIONS = {"rx": rx, "ry": ry, "rz": rz, "p": phase, "u1": phase}
_CALL = re.compile(r"^\s*([a-z][a-z0-9]*)\s*\((.*)\)\s*$")


def parse_angle(token: str) -> float:
    """Radians from '0.25', 'pi', '-pi/2', '3*pi/4' or '2pi'."""
    text = token.strip().lower().replace(" ", "")
    if not text:
        raise PreconditionError("empty angle")
    try:
        value = float(text)
    except ValueError:
        pass
    else:
        if not math.isfinite(value):
            raise PreconditionError(f"angle must be finite, got '{token}'")
        return value

    m = re.fullmatch(r"([+-]?)(\d*\.?\d*)\*?(pi|π)(?:/(\d*\.?\d+))?", text)
    if not m:
        raise PreconditionError(f"cannot parse angle '{token}'")
    sign, factor, _, divisor = m.groups()
    value = (float(factor) if factor else 1.0) * math.pi
    if divisor:
        value /= float(divisor)
    return -value if sign == "-" else value


def parse_gate(spec: str) -> UnitaryMatrix2:
    """Named gate ('x', 'rx(pi/4)', 'u(θ,φ,λ)') or a JSON matrix literal."""
    text = spec.strip()
    if text.startswith("["):
        try:
            return UnitaryMatrix2.from_list(json.loads(text))
        except json.JSONDecodeError as e:
            raise PreconditionError(f"invalid matrix literal: {e}")

    name = text.lower()
    if name in NAMED_GATES:
        return NAMED_GATES[name]

    m = _CALL.match(name)
    if not m:
        raise PreconditionError(f"unknown gate '{spec}'")
    func, args = m.group(1), [a for a in m.group(2).split(",")]
    angles = [parse_angle(a) for a in args]
    if func in _ROTATIONS and len(angles) == 1:
        return _ROTATIONS[func](angles[0])
    if func in ("u", "u3") and len(angles) == 3:
        return u3(*angles)
    raise PreconditionError(f"unknown gate '{spec}'")


# =============================================================================
# SPECTRAL TOOLS
# =============================================================================
@dataclass(frozen=True)
class EigenSystem:
    """Eigenphases in (-pi, pi] and the matching orthonormal eigenbasis."""

    theta1: float
    theta2: float
    basis: UnitaryMatrix2

    @property
    def phases(self) -> Tuple[float, float]:
        return (self.theta1, self.theta2)

    @property
    def largest_phase(self) -> float:
        """Eigenphase of largest magnitude (ties keep theta1)."""
        return self.theta1 if abs(self.theta1) >= abs(self.theta2) else self.theta2

    def diagonal(self) -> UnitaryMatrix2:
        return UnitaryMatrix2(
            np.diag([cmath.exp(1j * self.theta1), cmath.exp(1j * self.theta2)]),
            check=False,
        )

    def reconstruct(self, scale: float = 1.0) -> UnitaryMatrix2:
        """basis . diag(e^{i theta scale}) . basis^dagger."""
        v = self.basis.array
        d = np.diag([cmath.exp(1j * self.theta1 * scale), cmath.exp(1j * self.theta2 * scale)])
        return UnitaryMatrix2(v @ d @ v.conj().T, check=False)


def _principal_phase(z: complex) -> float:
    theta = cmath.phase(z)
    if theta <= -math.pi + 1e-15:
        theta = math.pi
    return theta


def eigen_decompose(u: MatrixLike) -> EigenSystem:
    """Spectral decomposition of a 2x2 unitary.

    The complex Schur form of a normal matrix is diagonal, so the Schur
    vectors are an orthonormal eigenbasis even for degenerate spectra.
    """
    u = _checked(u)
    t, z = linalg.schur(u.array, output="complex")
    return EigenSystem(
        theta1=_principal_phase(t[0, 0]),
        theta2=_principal_phase(t[1, 1]),
        basis=UnitaryMatrix2(z),
    )


def root_pow2(u: MatrixLike, j: int) -> UnitaryMatrix2:
    """Principal 2^j-th root: every eigenphase divided by 2^j."""
    if j < 0:
        raise PreconditionError(f"root exponent must be nonnegative, got {j}")
    u = _checked(u)
    if j == 0:
        return u
    return eigen_decompose(u).reconstruct(1.0 / (1 << j))


def spectral_error(u: MatrixLike, big_n: int) -> float:
    """max_i |e^{i theta_i / N} - 1| = sqrt(2(1 - cos(theta*/N)))."""
    if big_n <= 0:
        raise PreconditionError(f"N must be a positive integer, got {big_n}")
    es = eigen_decompose(u)
    return max(predicted_error(theta, big_n) for theta in es.phases)


def entrywise_error(u: MatrixLike, big_n: int) -> float:
    """max |(U^{1/N} - I)_ij| in the computational basis."""
    if big_n <= 0:
        raise PreconditionError(f"N must be a positive integer, got {big_n}")
    root = eigen_decompose(u).reconstruct(1.0 / big_n)
    return float(np.max(np.abs(root.array - np.eye(2))))


def predicted_error(theta: float, big_n: int) -> float:
    # 2|sin(x/2)| equals sqrt(2(1 - cos x)) without cancellation at small x
    return 2.0 * abs(math.sin(theta / (2.0 * big_n)))


def min_base_controls(theta_abs: float, epsilon: float) -> int:
    """Smallest n_b with sqrt(2(1 - cos(theta / 2^(n_b - 1)))) <= epsilon."""
    if not (0.0 < epsilon <= 2.0):
        raise PreconditionError(f"epsilon must lie in (0, 2], got {epsilon}")
    if not (0.0 < theta_abs <= math.pi):
        raise PreconditionError(f"theta must lie in (0, pi], got {theta_abs}")

    # arccos(1 - e^2/2) written as 2 arcsin(e/2) to stay finite for tiny epsilon
    n_base = max(1, math.ceil(math.log2(theta_abs / (2.0 * math.asin(epsilon / 2.0))) + 1.0))
    # the closed form can land one off when the log is within rounding of an integer
    while predicted_error(theta_abs, 1 << (n_base - 1)) > epsilon:
        n_base += 1
    while n_base > 1 and predicted_error(theta_abs, 1 << (n_base - 2)) <= epsilon:
        n_base -= 1
    return n_base


class ApproxPlan(BaseModel):
    """Base-control plan for approximating a multi-controlled gate."""

    model_config = ConfigDict(frozen=True)

    theta: float = Field(description="largest-magnitude eigenphase of U")
    epsilon: float = Field(gt=0.0, le=2.0)
    n_base: int = Field(ge=1)
    big_n: int = Field(ge=1)
    predicted_error: float = Field(ge=0.0)

    @model_validator(mode="after")
    def _consistent(self) -> "ApproxPlan":
        if self.big_n != 1 << (self.n_base - 1):
            raise ValueError(f"big_n must be 2^(n_base-1), got {self.big_n} for n_base={self.n_base}")
        if self.predicted_error > self.epsilon + _TINY:
            raise ValueError(
                f"predicted error {self.predicted_error:.3e} exceeds epsilon {self.epsilon:.3e}"
            )
        return self


def plan_approximation(u: MatrixLike, epsilon: float) -> ApproxPlan:
    """Plan for u at tolerance epsilon; n_base = 1 when u is the identity."""
    es = eigen_decompose(u)
    theta = es.largest_phase
    if abs(theta) < _TINY:
        n_base = 1
        if not (0.0 < epsilon <= 2.0):
            raise PreconditionError(f"epsilon must lie in (0, 2], got {epsilon}")
    else:
        n_base = min_base_controls(abs(theta), epsilon)
    big_n = 1 << (n_base - 1)
    return ApproxPlan(
        theta=theta,
        epsilon=epsilon,
        n_base=n_base,
        big_n=big_n,
        predicted_error=predicted_error(theta, big_n),
    )


# =============================================================================
# FACTORIZATIONS
# =============================================================================
@dataclass(frozen=True)
class ZyzAngles:
    """u = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta)."""

    alpha: float
    beta: float
    gamma: float
    delta: float

    def matrix(self) -> UnitaryMatrix2:
        m = cmath.exp(1j * self.alpha) * (rz(self.beta) @ ry(self.gamma) @ rz(self.delta)).array
        return UnitaryMatrix2(m, check=False)


def zyz_decompose(u: MatrixLike) -> ZyzAngles:
    u = _checked(u)
    alpha = cmath.phase(u.det()) / 2.0
    v = cmath.exp(-1j * alpha) * u.array

    gamma = 2.0 * math.atan2(abs(v[1, 0]), abs(v[0, 0]))
    if abs(v[0, 0]) > _TINY:
        plus = 2.0 * cmath.phase(v[1, 1])
    else:
        plus = 0.0
    if abs(v[1, 0]) > _TINY:
        minus = 2.0 * cmath.phase(v[1, 0])
    else:
        minus = 0.0
    return ZyzAngles(alpha=alpha, beta=(plus + minus) / 2.0, gamma=gamma, delta=(plus - minus) / 2.0)


@dataclass(frozen=True)
class AbcFactorization:
    """u = e^{i alpha} A X B X C with A B C = I."""

    global_phase_alpha: float
    a_gate: UnitaryMatrix2
    b_gate: UnitaryMatrix2
    c_gate: UnitaryMatrix2

    def reconstruct(self) -> UnitaryMatrix2:
        m = self.a_gate.array @ X.array @ self.b_gate.array @ X.array @ self.c_gate.array
        return UnitaryMatrix2(cmath.exp(1j * self.global_phase_alpha) * m, check=False)


def abc_factorize(u: MatrixLike) -> AbcFactorization:
    z = zyz_decompose(u)
    return AbcFactorization(
        global_phase_alpha=z.alpha,
        a_gate=rz(z.beta) @ ry(z.gamma / 2.0),
        b_gate=ry(-z.gamma / 2.0) @ rz(-(z.delta + z.beta) / 2.0),
        c_gate=rz((z.delta - z.beta) / 2.0),
    )


def solve_interleave(m: MatrixLike) -> UnitaryMatrix2:
    """A in SU(2) with X A^dagger X A = m, for m = [[a, -c], [c, conj(a)]], c real.

    With real off-diagonals X A^dagger X equals A, so A is the square root
    of m on the same rotation axis.
    """
    m = _checked(m)
    cls = classify(m, tol=CONSTRUCTION_TOL)
    if not (cls.special_unitary and cls.real_secondary_diagonal):
        raise PreconditionError("solve_interleave needs a special-unitary matrix with real off-diagonals")

    a, c = m[0, 0], m[1, 0].real
    p = math.sqrt(max(0.0, (1.0 + a.real) / 2.0))
    if p <= 1e-9:
        raise PreconditionError("solve_interleave is degenerate at m = -I")
    alpha = complex(p, a.imag / (2.0 * p))
    beta = c / (2.0 * p)
    return UnitaryMatrix2([[alpha, -beta], [beta, alpha.conjugate()]])


class Classification(BaseModel):
    model_config = ConfigDict(frozen=True)

    special_unitary: bool
    real_main_diagonal: bool
    real_secondary_diagonal: bool


def classify(u: MatrixLike, tol: float = VERIFY_TOL) -> Classification:
    m = as_array(u)
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    return Classification(
        special_unitary=bool(abs(det - 1.0) <= tol),
        real_main_diagonal=bool(abs(m[0, 0].imag) <= tol and abs(m[1, 1].imag) <= tol),
        real_secondary_diagonal=bool(abs(m[0, 1].imag) <= tol and abs(m[1, 0].imag) <= tol),
    )
