#!/usr/bin/env python3
"""
Dense simulation oracle.

Statevector and full-unitary simulation of Circuits, ideal multi-controlled
operators, and the distance measures used to verify every synthesized
circuit. Basis index i has qubit q in bit q (qubit 0 least significant).
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .algebra import UnitaryMatrix2, as_array
from .circuit import Circuit, check_distinct
from .config import get_settings
from .errors import OracleGuardError, PreconditionError, VerificationError

logger = logging.getLogger(__name__)

NORM_TOL = 1e-10
DEFAULT_SAMPLED_COLUMNS = 64
FULL_MODE_MAX_QUBITS = 10

Payload = Union[UnitaryMatrix2, Sequence[UnitaryMatrix2]]


@dataclass(frozen=True)
class ControlSpec:
    """Control wires and one or more target wires, all distinct."""

    controls: Tuple[int, ...]
    targets: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "controls", tuple(self.controls))
        object.__setattr__(self, "targets", tuple(self.targets))
        if not self.targets:
            raise PreconditionError("a control spec needs at least one target")
        check_distinct(self.controls, self.targets)

    @classmethod
    def single(cls, controls: Sequence[int], target: int) -> "ControlSpec":
        return cls(tuple(controls), (target,))

    @property
    def target(self) -> int:
        return self.targets[0]

    def validate(self, width: int) -> None:
        check_distinct(self.controls, self.targets, width=width)


@dataclass
class StateVector:
    """Normalized amplitudes over `width` qubits."""

    amplitudes: np.ndarray
    width: int

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if self.amplitudes.shape[0] != 1 << self.width:
            raise PreconditionError(
                f"{self.amplitudes.shape[0]} amplitudes do not describe {self.width} qubits"
            )
        norm = float(np.linalg.norm(self.amplitudes))
        if abs(norm - 1.0) > NORM_TOL:
            raise PreconditionError(f"state norm {norm:.12f} differs from 1")

    @classmethod
    def basis(cls, width: int, index: int) -> "StateVector":
        amps = np.zeros(1 << width, dtype=complex)
        amps[index] = 1.0
        return cls(amps, width)

    @classmethod
    def from_bits(cls, width: int, ones: Sequence[int]) -> "StateVector":
        return cls.basis(width, bits_to_index(ones))


def bits_to_index(ones: Sequence[int]) -> int:
    index = 0
    for q in ones:
        index |= 1 << q
    return index


def _guard(width: int, mode: str) -> None:
    settings = get_settings()
    limit = settings.max_unitary_qubits if mode == "full" else settings.max_oracle_qubits
    if width > limit:
        raise OracleGuardError(width, limit, mode)


# =============================================================================
# KERNEL
# =============================================================================
def _apply_controlled(psi: np.ndarray, matrix: np.ndarray, controls: Sequence[int], target: int, width: int) -> None:
    """In place: apply `matrix` to `target` on the slice where every control is 1.

    psi has shape [2] * width + [batch]; qubit q lives on axis width - 1 - q.
    """
    index: List = [slice(None)] * (width + 1)
    for c in controls:
        index[width - 1 - c] = 1
    sub = psi[tuple(index)]
    axis = width - 1 - target
    axis -= sum(1 for c in controls if width - 1 - c < axis)

    moved = np.moveaxis(sub, axis, 0)
    zero, one = moved[0].copy(), moved[1].copy()
    moved[0] = matrix[0, 0] * zero + matrix[0, 1] * one
    moved[1] = matrix[1, 0] * zero + matrix[1, 1] * one


_X = np.array([[0, 1], [1, 0]], dtype=complex)


def _run(circuit: Circuit, states: np.ndarray) -> np.ndarray:
    """Apply circuit to the columns of states (shape [2^n, batch])."""
    n = circuit.width
    psi = np.array(states, dtype=complex).reshape([2] * n + [-1])
    for gate in circuit.gates:
        if gate.kind == "cx":
            _apply_controlled(psi, _X, (gate.control,), gate.target, n)
        else:
            _apply_controlled(psi, gate.matrix.array, (), gate.target, n)
    return psi.reshape(1 << n, -1)


def apply(circuit: Circuit, state: StateVector) -> StateVector:
    if circuit.width != state.width:
        raise PreconditionError(f"circuit width {circuit.width} does not match state width {state.width}")
    _guard(circuit.width, "statevector")
    out = _run(circuit, state.amplitudes.reshape(-1, 1))[:, 0]
    return StateVector(out, circuit.width)


def apply_columns(circuit: Circuit, columns: Sequence[int]) -> np.ndarray:
    """Circuit applied to the listed basis states; one output column each."""
    _guard(circuit.width, "statevector")
    dim = 1 << circuit.width
    states = np.zeros((dim, len(columns)), dtype=complex)
    states[list(columns), np.arange(len(columns))] = 1.0
    return _run(circuit, states)


def full_unitary(circuit: Circuit) -> np.ndarray:
    """Dense matrix; column j is the image of basis state j."""
    _guard(circuit.width, "full")
    return _run(circuit, np.eye(1 << circuit.width, dtype=complex))


# =============================================================================
# IDEAL OPERATORS
# =============================================================================
def _payloads(u: Payload, spec: ControlSpec) -> List[np.ndarray]:
    if isinstance(u, UnitaryMatrix2) or (isinstance(u, np.ndarray) and u.shape == (2, 2)):
        mats = [as_array(u)] * len(spec.targets)
    else:
        mats = [as_array(m) for m in u]
    if len(mats) != len(spec.targets):
        raise PreconditionError(f"{len(mats)} payloads for {len(spec.targets)} targets")
    return mats


def ideal_apply(u: Payload, spec: ControlSpec, width: int, states: np.ndarray) -> np.ndarray:
    """Ideal prod_i C^k u_i applied to the columns of `states`."""
    spec.validate(width)
    psi = np.array(states, dtype=complex).reshape([2] * width + [-1])
    for matrix, target in zip(_payloads(u, spec), spec.targets):
        _apply_controlled(psi, matrix, spec.controls, target, width)
    return psi.reshape(1 << width, -1)


def ideal_mcu(u: Payload, spec: ControlSpec, width: int) -> np.ndarray:
    """Dense ideal prod_i C^k u_i."""
    _guard(width, "full")
    return ideal_apply(u, spec, width, np.eye(1 << width, dtype=complex))


# =============================================================================
# DISTANCES
# =============================================================================
@dataclass
class PatternResult:
    name: str
    error: float
    leakage: float
    block: np.ndarray = field(repr=False)


@dataclass
class PatternReport:
    patterns: List[PatternResult]

    @property
    def max_error(self) -> float:
        return max((p.error for p in self.patterns), default=0.0)

    def by_name(self) -> Dict[str, PatternResult]:
        return {p.name: p for p in self.patterns}


def control_patterns(spec: ControlSpec) -> List[Tuple[str, Tuple[int, ...]]]:
    """(name, active controls): all active, each single control off, all off."""
    patterns = [("all-active", spec.controls)]
    for c in spec.controls:
        patterns.append((f"q{c}-inactive", tuple(x for x in spec.controls if x != c)))
    if len(spec.controls) > 1:
        patterns.append(("all-inactive", ()))
    return patterns


def pattern_distances(circuit: Circuit, u: Payload, spec: ControlSpec,
                      background: Sequence[int] = ()) -> PatternReport:
    """Compare the target-conditional action for each control pattern.

    For a pattern, every target basis state is fed through the circuit with
    the pattern's controls set (plus `background` wires set to 1). The
    2^nt x 2^nt block on the target subspace is compared with the ideal in
    operator 2-norm; amplitude leaking out of that subspace counts as error.
    """
    spec.validate(circuit.width)
    if set(background) & (set(spec.controls) | set(spec.targets)):
        raise PreconditionError("background wires overlap the control spec")
    n = circuit.width
    nt = len(spec.targets)
    results = []

    for name, active in control_patterns(spec):
        base = bits_to_index(active) | bits_to_index(background)
        columns = []
        for t in range(1 << nt):
            columns.append(base | bits_to_index([spec.targets[i] for i in range(nt) if (t >> i) & 1]))
        got = apply_columns(circuit, columns)
        states = np.zeros((1 << n, len(columns)), dtype=complex)
        states[columns, np.arange(len(columns))] = 1.0
        want = ideal_apply(u, spec, n, states)

        block = got[columns, :]
        expected = want[columns, :]
        leakage = float(np.sqrt(max(0.0, np.max(1.0 - np.sum(np.abs(block) ** 2, axis=0)))))
        error = float(np.linalg.norm(block - expected, ord=2))
        results.append(PatternResult(name, max(error, leakage), leakage, block))
        logger.debug("pattern %s: error %.3e leakage %.3e", name, error, leakage)

    return PatternReport(results)


def sampled_columns(width: int, spec: ControlSpec, count: int, seed: int) -> List[int]:
    """Deterministic basis inputs, always including the all-controls-on inputs."""
    active = bits_to_index(spec.controls)
    forced = [active]
    for t in spec.targets:
        forced.append(active | (1 << t))
    rng = np.random.default_rng(seed)
    extra = rng.integers(0, 1 << width, size=max(0, count - len(forced))).tolist()
    seen, columns = set(), []
    for c in forced + [int(x) for x in extra]:
        if c not in seen:
            seen.add(c)
            columns.append(c)
    return columns


def distance(circuit: Circuit, u: Payload, spec: ControlSpec, mode: str = "full",
             count: int = DEFAULT_SAMPLED_COLUMNS, seed: int = 0) -> float:
    """Distance between circuit and ideal prod C^k u.

    full: max-entry difference of the dense unitaries.
    sampled: max-entry difference over selected input columns.
    patterns: max over control patterns of pattern_distances.
    """
    spec.validate(circuit.width)
    if mode == "full":
        return float(np.max(np.abs(full_unitary(circuit) - ideal_mcu(u, spec, circuit.width))))
    if mode == "sampled":
        columns = sampled_columns(circuit.width, spec, count, seed)
        got = apply_columns(circuit, columns)
        states = np.zeros((1 << circuit.width, len(columns)), dtype=complex)
        states[columns, np.arange(len(columns))] = 1.0
        want = ideal_apply(u, spec, circuit.width, states)
        return float(np.max(np.abs(got - want)))
    if mode == "patterns":
        return pattern_distances(circuit, u, spec).max_error
    raise PreconditionError(f"unknown distance mode '{mode}'")


def auto_distance(circuit: Circuit, u: Payload, spec: ControlSpec, seed: int = 0) -> Tuple[str, float]:
    """Full mode when the dense unitary fits the guard, sampled otherwise."""
    if circuit.width <= min(get_settings().max_unitary_qubits, FULL_MODE_MAX_QUBITS):
        return "full", distance(circuit, u, spec, "full")
    return "sampled", distance(circuit, u, spec, "sampled", seed=seed)


def debug_verify(circuit: Circuit, u: Payload, spec: ControlSpec, what: str,
                 tolerance: float = 1e-9) -> Optional[float]:
    """Check an exact construction against its ideal when MCGATE_DEBUG_VERIFY is on."""
    settings = get_settings()
    if not settings.debug_verify:
        return None
    if circuit.width > settings.max_oracle_qubits:
        logger.debug("skipping debug verification of %s: %d qubits", what, circuit.width)
        return None
    mode, error = auto_distance(circuit, u, spec)
    logger.debug("%s verified in %s mode: %.3e", what, mode, error)
    if error > tolerance:
        raise VerificationError(error, tolerance, what)
    return error
