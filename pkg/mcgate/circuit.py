#!/usr/bin/env python3
"""
Elementary-gate circuits.
One-qubit unitaries and CNOTs over indexed wires (qubit 0 is the least
significant bit), a builder, and the versioned JSON format.
"""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from . import algebra
from .algebra import UnitaryMatrix2
from .errors import PreconditionError, SerializationError

QubitId = int

JSON_FORMAT = "mcgate-circuit/1"

# labels with a fixed matrix; parametrised labels are "rx(θ)" etc.
_FIXED_LABELS = {"h", "x", "y", "z", "s", "sdg", "t", "tdg"}


@dataclass(frozen=True, eq=False)
class Gate:
    """Either a one-qubit unitary ("u1q") or a CNOT ("cx")."""

    kind: str
    target: QubitId
    control: Optional[QubitId] = None
    matrix: Optional[UnitaryMatrix2] = None
    label: Optional[str] = None

    def __post_init__(self):
        if self.kind == "cx":
            if self.control is None or self.control == self.target:
                raise PreconditionError(f"CNOT needs distinct control and target, got {self.control}->{self.target}")
        elif self.kind == "u1q":
            if self.matrix is None:
                raise PreconditionError("one-qubit gate without a matrix")
        else:
            raise PreconditionError(f"unknown gate kind '{self.kind}'")

    @property
    def qubits(self) -> Tuple[QubitId, ...]:
        if self.kind == "cx":
            return (self.control, self.target)
        return (self.target,)

    @property
    def is_cnot(self) -> bool:
        return self.kind == "cx"

    def adjoint(self) -> "Gate":
        if self.kind == "cx":
            return self
        return Gate("u1q", self.target, matrix=self.matrix.dagger(), label=_adjoint_label(self.label))

    def relabel(self, mapping: Sequence[int]) -> "Gate":
        control = None if self.control is None else mapping[self.control]
        return Gate(self.kind, mapping[self.target], control, self.matrix, self.label)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Gate):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.target == other.target
            and self.control == other.control
            and self.label == other.label
            and self.matrix == other.matrix
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.target, self.control, self.label))

    def __repr__(self) -> str:
        if self.kind == "cx":
            return f"cx({self.control},{self.target})"
        return f"{self.label or 'u'}({self.target})"


def _adjoint_label(label: Optional[str]) -> Optional[str]:
    if label is None:
        return None
    swaps = {"t": "tdg", "tdg": "t", "s": "sdg", "sdg": "s"}
    if label in swaps:
        return swaps[label]
    if label in _FIXED_LABELS:
        return label
    name, _, rest = label.partition("(")
    if name in ("rx", "ry", "rz", "p") and rest.endswith(")"):
        value = float(rest[:-1])
        return f"{name}({-value!r})" if value != 0.0 else label
    return None


@dataclass(frozen=True, eq=False)
class Circuit:
    """Immutable gate list over `width` wires."""

    width: int
    gates: Tuple[Gate, ...] = ()
    name: str = ""
    counters: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.width < 1:
            raise PreconditionError(f"circuit width must be positive, got {self.width}")
        for gate in self.gates:
            for q in gate.qubits:
                if not 0 <= q < self.width:
                    raise PreconditionError(f"qubit {q} outside circuit of width {self.width}")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Circuit):
            return NotImplemented
        return (
            self.width == other.width
            and self.gates == other.gates
            and self.name == other.name
            and dict(self.counters) == dict(other.counters)
        )

    def __hash__(self) -> int:
        return hash((self.width, len(self.gates), self.name))

    def cnot_count(self) -> int:
        return sum(1 for g in self.gates if g.kind == "cx")

    def depth(self) -> int:
        level = [0] * self.width
        for gate in self.gates:
            d = max(level[q] for q in gate.qubits) + 1
            for q in gate.qubits:
                level[q] = d
        return max(level, default=0)

    def append(self, gate: Gate) -> "Circuit":
        return Circuit(self.width, self.gates + (gate,), self.name, self.counters)

    def compose(self, other: "Circuit") -> "Circuit":
        """self followed by other."""
        if other.width > self.width:
            raise PreconditionError(f"cannot compose width {other.width} onto width {self.width}")
        return Circuit(self.width, self.gates + other.gates, self.name, _merge(self.counters, other.counters))

    def adjoint(self) -> "Circuit":
        return Circuit(
            self.width,
            tuple(g.adjoint() for g in reversed(self.gates)),
            self.name,
            self.counters,
        )

    def map_qubits(self, permutation: Sequence[int]) -> "Circuit":
        perm = list(permutation)
        if sorted(perm) != list(range(self.width)):
            raise PreconditionError(f"{perm} is not a permutation of range({self.width})")
        return Circuit(self.width, tuple(g.relabel(perm) for g in self.gates), self.name, self.counters)

    def widen(self, width: int) -> "Circuit":
        return Circuit(width, self.gates, self.name, self.counters)

    def with_name(self, name: str) -> "Circuit":
        return Circuit(self.width, self.gates, name, self.counters)

    def count(self, counter: str) -> int:
        return self.counters.get(counter, 0)

    def __repr__(self) -> str:
        return f"Circuit(width={self.width}, gates={len(self.gates)}, cnots={self.cnot_count()}, name={self.name!r})"


def _merge(a: Mapping[str, int], b: Mapping[str, int]) -> Dict[str, int]:
    merged = dict(a)
    for key, value in b.items():
        merged[key] = merged.get(key, 0) + value
    return merged


class CircuitBuilder:
    """Mutable, single-threaded accumulator that produces a Circuit."""

    def __init__(self, width: int, name: str = ""):
        if width < 1:
            raise PreconditionError(f"circuit width must be positive, got {width}")
        self.width = width
        self.name = name
        self._gates: List[Gate] = []
        self._counters: Dict[str, int] = {}

    def _check(self, *qubits: int) -> None:
        for q in qubits:
            if not 0 <= q < self.width:
                raise PreconditionError(f"qubit {q} outside circuit of width {self.width}")

    def gate(self, matrix: UnitaryMatrix2, target: QubitId, label: Optional[str] = None,
             skip_identity: bool = False) -> "CircuitBuilder":
        self._check(target)
        if skip_identity and matrix.is_identity():
            return self
        self._gates.append(Gate("u1q", target, matrix=matrix, label=label))
        return self

    def cx(self, control: QubitId, target: QubitId) -> "CircuitBuilder":
        self._check(control, target)
        self._gates.append(Gate("cx", target, control=control))
        return self

    def h(self, q: QubitId) -> "CircuitBuilder":
        return self.gate(algebra.H, q, "h")

    def x(self, q: QubitId) -> "CircuitBuilder":
        return self.gate(algebra.X, q, "x")

    def t(self, q: QubitId) -> "CircuitBuilder":
        return self.gate(algebra.T, q, "t")

    def tdg(self, q: QubitId) -> "CircuitBuilder":
        return self.gate(algebra.TDG, q, "tdg")

    def rx(self, theta: float, q: QubitId) -> "CircuitBuilder":
        return self.gate(algebra.rx(theta), q, f"rx({theta!r})")

    def ry(self, theta: float, q: QubitId) -> "CircuitBuilder":
        return self.gate(algebra.ry(theta), q, f"ry({theta!r})")

    def rz(self, theta: float, q: QubitId) -> "CircuitBuilder":
        return self.gate(algebra.rz(theta), q, f"rz({theta!r})")

    def phase(self, alpha: float, q: QubitId) -> "CircuitBuilder":
        return self.gate(algebra.phase(alpha), q, f"p({alpha!r})")

    def extend(self, circuit: Circuit) -> "CircuitBuilder":
        if circuit.width > self.width:
            raise PreconditionError(f"cannot extend width {self.width} with width {circuit.width}")
        self._gates.extend(circuit.gates)
        for key, value in circuit.counters.items():
            self.tally(key, value)
        return self

    def tally(self, counter: str, amount: int = 1) -> "CircuitBuilder":
        self._counters[counter] = self._counters.get(counter, 0) + amount
        return self

    def __len__(self) -> int:
        return len(self._gates)

    def build(self, name: Optional[str] = None) -> Circuit:
        return Circuit(self.width, tuple(self._gates), self.name if name is None else name, dict(self._counters))


def check_distinct(*groups: Iterable[int], width: Optional[int] = None) -> None:
    """Raise unless every listed wire is distinct (and < width when given)."""
    seen = set()
    for group in groups:
        for q in group:
            if q in seen:
                raise PreconditionError(f"qubit {q} used twice")
            if q < 0 or (width is not None and q >= width):
                raise PreconditionError(f"qubit {q} outside circuit of width {width}")
            seen.add(q)


def fit_width(width: Optional[int], *groups: Iterable[int]) -> int:
    """`width`, or the smallest width holding every listed wire when None."""
    needed = max((q for g in groups for q in g), default=0) + 1
    if width is None:
        return needed
    if width < needed:
        raise PreconditionError(f"width {width} too small for qubit {needed - 1}")
    return width


# =============================================================================
# JSON
# =============================================================================
def to_json(circuit: Circuit, indent: Optional[int] = None) -> str:
    gates: List[Dict[str, Any]] = []
    for g in circuit.gates:
        if g.kind == "cx":
            gates.append({"kind": "cx", "control": g.control, "target": g.target})
        else:
            gates.append({"kind": "u1q", "target": g.target, "label": g.label, "matrix": g.matrix.to_list()})
    doc = {
        "format": JSON_FORMAT,
        "width": circuit.width,
        "name": circuit.name,
        "counters": dict(circuit.counters),
        "gates": gates,
    }
    return json.dumps(doc, indent=indent)


def from_json(text: str) -> Circuit:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SerializationError(f"invalid circuit JSON: {e}")
    if not isinstance(doc, dict) or doc.get("format") != JSON_FORMAT:
        raise SerializationError(f"expected a '{JSON_FORMAT}' document")

    try:
        width = int(doc["width"])
        gates = []
        for entry in doc["gates"]:
            if entry["kind"] == "cx":
                gates.append(Gate("cx", int(entry["target"]), control=int(entry["control"])))
            elif entry["kind"] == "u1q":
                matrix = UnitaryMatrix2.from_list(entry["matrix"])
                gates.append(Gate("u1q", int(entry["target"]), matrix=matrix, label=entry.get("label")))
            else:
                raise SerializationError(f"unknown gate kind '{entry['kind']}'")
        return Circuit(
            width,
            tuple(gates),
            str(doc.get("name", "")),
            {str(k): int(v) for k, v in doc.get("counters", {}).items()},
        )
    except SerializationError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise SerializationError(f"malformed circuit JSON: {e}")


# =============================================================================
# REPORT
# =============================================================================
class DecompositionReport(BaseModel):
    """A synthesized circuit with its count, bound and measured error."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    circuit: Circuit
    strategy: str
    cnot_count: int = -1
    bound: Optional[int] = None
    oracle_error: Optional[float] = None
    bound_satisfied: bool = True
    plan: Optional[algebra.ApproxPlan] = None
    layout: Optional[Any] = None

    @model_validator(mode="after")
    def _derive(self) -> "DecompositionReport":
        self.cnot_count = self.circuit.cnot_count()
        self.bound_satisfied = self.bound is None or self.cnot_count <= self.bound
        return self

    def summary(self) -> str:
        bound = "n/a" if self.bound is None else str(self.bound)
        error = "n/a" if self.oracle_error is None else f"{self.oracle_error:.3e}"
        return (
            f"strategy={self.strategy} n={self.circuit.width} cnots={self.cnot_count} "
            f"bound={bound} error={error}"
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "strategy": self.strategy,
            "width": self.circuit.width,
            "cnot_count": self.cnot_count,
            "bound": self.bound,
            "bound_satisfied": self.bound_satisfied,
            "oracle_error": self.oracle_error,
            "plan": None if self.plan is None else self.plan.model_dump(),
        }
