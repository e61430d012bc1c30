#!/usr/bin/env python3
"""
OpenQASM 2.0 export and import.
One quantum register q[width]; one-qubit gates keep their label when the
label's matrix matches, otherwise they are written as u3 with the dropped
global phase accumulated into a header comment.
"""

import math
import re
from typing import List, Tuple

import numpy as np

from . import algebra
from .circuit import Circuit, CircuitBuilder, Gate
from .errors import SerializationError

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";'

_LABEL_TOL = 1e-12
_ROTATION_LABELS = {"rx": algebra.rx, "ry": algebra.ry, "rz": algebra.rz, "p": algebra.phase}
_QASM_NAMES = {"p": "u1"}


def _labelled_line(gate: Gate) -> str:
    """QASM text for a labelled gate, or '' when the label cannot be trusted."""
    label = gate.label
    if not label:
        return ""
    if label in algebra.NAMED_GATES and label not in ("i", "id"):
        if gate.matrix.is_close(algebra.NAMED_GATES[label], atol=_LABEL_TOL):
            return f"{label} q[{gate.target}];"
        return ""

    name, _, rest = label.partition("(")
    if name in _ROTATION_LABELS and rest.endswith(")"):
        try:
            angle = float(rest[:-1])
        except ValueError:
            return ""
        if gate.matrix.is_close(_ROTATION_LABELS[name](angle), atol=_LABEL_TOL):
            return f"{_QASM_NAMES.get(name, name)}({angle!r}) q[{gate.target}];"
    return ""


def _u3_line(gate: Gate) -> Tuple[str, float]:
    z = algebra.zyz_decompose(gate.matrix)
    dropped = z.alpha - (z.beta + z.delta) / 2.0
    return f"u3({z.gamma!r},{z.beta!r},{z.delta!r}) q[{gate.target}];", dropped


def to_qasm(circuit: Circuit) -> str:
    body: List[str] = []
    global_phase = 0.0
    for gate in circuit.gates:
        if gate.kind == "cx":
            body.append(f"cx q[{gate.control}],q[{gate.target}];")
            continue
        line = _labelled_line(gate)
        if not line:
            line, dropped = _u3_line(gate)
            global_phase += dropped
        body.append(line)

    lines = [HEADER]
    if circuit.name:
        lines.append(f"// {circuit.name}")
    wrapped = math.remainder(global_phase, 2.0 * math.pi)
    if abs(wrapped) > _LABEL_TOL:
        lines.append(f"// global phase: {wrapped!r}")
    lines.append(f"qreg q[{circuit.width}];")
    lines.extend(body)
    return "\n".join(lines) + "\n"


_STATEMENT = re.compile(r"^([a-z][a-z0-9_]*)\s*(?:\(([^)]*)\))?\s+(.+)$")
_QUBIT = re.compile(r"^q\[(\d+)\]$")
_FIXED = {"h", "x", "y", "z", "s", "sdg", "t", "tdg", "id"}


def global_phase_of(text: str) -> float:
    """The dropped global phase recorded by to_qasm (0.0 when absent)."""
    m = re.search(r"^// global phase: (\S+)$", text, flags=re.MULTILINE)
    return float(m.group(1)) if m else 0.0


def from_qasm(text: str, restore_phase: bool = True) -> Circuit:
    """Read the OpenQASM 2.0 subset written by to_qasm.

    With restore_phase the recorded global phase comes back as a scalar
    gate on qubit 0, so the result matches the exported circuit exactly.
    """
    builder = None
    name = ""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("//"):
            if number <= 3 and not line.startswith("// global phase") and not name:
                name = line[2:].strip()
            continue
        if not line or line.startswith("OPENQASM") or line.startswith("include"):
            continue
        if not line.endswith(";"):
            raise SerializationError(f"line {number}: missing ';'")
        line = line[:-1].strip()

        if line.startswith("qreg"):
            m = re.fullmatch(r"qreg\s+q\[(\d+)\]", line)
            if not m or builder is not None:
                raise SerializationError(f"line {number}: expected a single 'qreg q[n]'")
            builder = CircuitBuilder(int(m.group(1)))
            continue
        if line.startswith("barrier"):
            continue
        if builder is None:
            raise SerializationError(f"line {number}: gate before qreg")

        m = _STATEMENT.match(line)
        if not m:
            raise SerializationError(f"line {number}: cannot parse '{raw.strip()}'")
        op, params, args = m.group(1), m.group(2), m.group(3)
        qubits = []
        for arg in args.split(","):
            qm = _QUBIT.match(arg.strip())
            if not qm:
                raise SerializationError(f"line {number}: bad operand '{arg.strip()}'")
            qubits.append(int(qm.group(1)))
        angles = [algebra.parse_angle(p) for p in params.split(",")] if params else []

        try:
            if op == "cx" and len(qubits) == 2:
                builder.cx(qubits[0], qubits[1])
            elif op in _FIXED and len(qubits) == 1 and not angles:
                builder.gate(algebra.NAMED_GATES[op], qubits[0], None if op == "id" else op)
            elif op in ("rx", "ry", "rz") and len(angles) == 1:
                getattr(builder, op)(angles[0], qubits[0])
            elif op in ("u1", "p") and len(angles) == 1:
                builder.phase(angles[0], qubits[0])
            elif op in ("u3", "u") and len(angles) == 3:
                builder.gate(algebra.u3(*angles), qubits[0])
            else:
                raise SerializationError(f"line {number}: unsupported statement '{raw.strip()}'")
        except SerializationError:
            raise
        except Exception as e:
            raise SerializationError(f"line {number}: {e}")

    if builder is None:
        raise SerializationError("no qreg declaration")
    phi = global_phase_of(text)
    if restore_phase and phi != 0.0:
        builder.gate(algebra.UnitaryMatrix2(np.exp(1j * phi) * np.eye(2)), 0)
    return builder.build(name)


def unitary_phase_equal(a: np.ndarray, b: np.ndarray, atol: float = 1e-9) -> bool:
    """a == e^{i phi} b for some phi."""
    index = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(b[index]) < atol:
        return bool(np.allclose(a, b, atol=atol))
    ratio = a[index] / b[index]
    if abs(abs(ratio) - 1.0) > atol:
        return False
    return bool(np.allclose(a, ratio * b, atol=atol))
