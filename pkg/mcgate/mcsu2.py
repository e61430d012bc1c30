#!/usr/bin/env python3
"""
Multi-controlled SU(2) synthesis.

For a special-unitary W whose off-diagonals are real, C^k W is built from
four multi-controlled X gates on two halves of the controls:

    A . MCX(h2) . A^dagger . MCX(h1) . A . MCX(h2) . A^dagger . MCX(h1)

with A^2 = sqrt(W). Each MCX borrows the other half (plus any idle wire) as
dirty ancillas, so no clean ancilla is needed and the cost is 16n - 40
CNOTs for n = k + 1 once both halves hold at least three controls.

Real main diagonals are handled by conjugating with H, anything else by
conjugating into W's eigenbasis. Several targets share the four MCX gates.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from . import algebra
from .algebra import CONSTRUCTION_TOL, I2, UnitaryMatrix2, classify
from .circuit import Circuit, CircuitBuilder, check_distinct, fit_width
from .errors import PreconditionError
from .mcx import add_mcx
from .oracle import ControlSpec, debug_verify

logger = logging.getLogger(__name__)

_MINUS_I_TOL = 1e-9


# =============================================================================
# SINGLE CONTROL
# =============================================================================
def add_controlled_u(b: CircuitBuilder, u: UnitaryMatrix2, control: int, target: int) -> None:
    """Any controlled U(2) with two CNOTs: C, CX, B, CX, A, then phase(alpha) on the control."""
    abc = algebra.abc_factorize(u)
    b.gate(abc.c_gate, target, skip_identity=True)
    b.cx(control, target)
    b.gate(abc.b_gate, target, skip_identity=True)
    b.cx(control, target)
    b.gate(abc.a_gate, target, skip_identity=True)
    if abs(math.remainder(abc.global_phase_alpha, 2.0 * math.pi)) > 1e-12:
        b.phase(abc.global_phase_alpha, control)


def controlled_u(u: UnitaryMatrix2, control: int, target: int, width: Optional[int] = None) -> Circuit:
    check_distinct((control, target))
    b = CircuitBuilder(fit_width(width, (control, target)), "controlled_u")
    add_controlled_u(b, u, control, target)
    return b.build()


# =============================================================================
# PREPARATION
# =============================================================================
@dataclass(frozen=True)
class _Prepared:
    """target gets `before`, then C^k core, then `after`."""

    target: int
    payload: UnitaryMatrix2
    core: UnitaryMatrix2
    before: Optional[UnitaryMatrix2] = None
    after: Optional[UnitaryMatrix2] = None


def _require_su2(w: UnitaryMatrix2) -> None:
    if not classify(w, tol=CONSTRUCTION_TOL).special_unitary:
        raise PreconditionError(f"expected det = 1, got det = {w.det():.6g}")


def _prepare(w: UnitaryMatrix2, target: int, path: str) -> _Prepared:
    _require_su2(w)
    cls = classify(w, tol=CONSTRUCTION_TOL)
    if path == "auto":
        if cls.real_secondary_diagonal:
            path = "secondary"
        elif cls.real_main_diagonal:
            path = "main"
        else:
            path = "general"

    if path == "secondary":
        if not cls.real_secondary_diagonal:
            raise PreconditionError("off-diagonal entries are not real")
        return _Prepared(target, w, w)
    if path == "main":
        if not cls.real_main_diagonal:
            raise PreconditionError("main-diagonal entries are not real")
        return _Prepared(target, w, algebra.H @ w @ algebra.H, algebra.H, algebra.H)

    es = algebra.eigen_decompose(w)
    v = es.basis
    return _Prepared(target, w, es.diagonal(), v.dagger(), v)


def interleave_factor(core: UnitaryMatrix2) -> UnitaryMatrix2:
    """A with (X A^dagger X A)^2 = core; core special-unitary with real off-diagonals."""
    if core.is_close(-1.0 * I2.array, atol=_MINUS_I_TOL):
        m = algebra.ry(math.pi)
    else:
        m = algebra.root_pow2(core, 1)
    return algebra.solve_interleave(m)


# =============================================================================
# BUILDER LEVEL
# =============================================================================
def _add_interleaved(b: CircuitBuilder, factors: Sequence[Tuple[int, UnitaryMatrix2]],
                     controls: Sequence[int]) -> None:
    ordered = sorted(controls)
    k1 = (len(ordered) + 1) // 2
    h1, h2 = ordered[:k1], ordered[k1:]
    targets = [t for t, _ in factors]
    idle = [q for q in range(b.width) if q not in targets]

    for _ in range(2):
        for t, a in factors:
            b.gate(a, t)
        add_mcx(b, h2, targets, idle)
        for t, a in factors:
            b.gate(a.dagger(), t)
        add_mcx(b, h1, targets, idle)


def add_mcsu2(b: CircuitBuilder, payloads: Sequence[Tuple[UnitaryMatrix2, int]],
              controls: Sequence[int], path: str = "auto") -> None:
    """prod_i C^k W_i on the listed targets; identity payloads are dropped."""
    if not controls:
        raise PreconditionError("multi-controlled SU(2) needs at least one control")
    prepared = [_prepare(w, t, path) for w, t in payloads]
    prepared = [p for p in prepared if not p.core.is_identity()]
    if not prepared:
        return

    if len(controls) == 1:
        for p in prepared:
            add_controlled_u(b, p.payload, controls[0], p.target)
            b.tally("c1u")
        return

    for p in prepared:
        if p.before is not None:
            b.gate(p.before, p.target, skip_identity=True)
    _add_interleaved(b, [(p.target, interleave_factor(p.core)) for p in prepared], controls)
    for p in prepared:
        if p.after is not None:
            b.gate(p.after, p.target, skip_identity=True)
    b.tally("mcsu2")


# =============================================================================
# PUBLIC CONSTRUCTORS
# =============================================================================
def _single(w: UnitaryMatrix2, controls: Sequence[int], target: int, width: Optional[int],
            path: str, name: str) -> Circuit:
    check_distinct(controls, (target,))
    b = CircuitBuilder(fit_width(width, controls, (target,)), name)
    add_mcsu2(b, [(w, target)], list(controls), path)
    circuit = b.build()
    debug_verify(circuit, w, ControlSpec.single(controls, target), name)
    return circuit


def mcsu2_real_secondary(w: UnitaryMatrix2, controls: Sequence[int], target: int,
                         width: Optional[int] = None) -> Circuit:
    """C^k W for W in SU(2) with real off-diagonals; 16n - 40 CNOTs at most."""
    return _single(w, controls, target, width, "secondary", "mcsu2_real_secondary")


def mcsu2_real_main(w: UnitaryMatrix2, controls: Sequence[int], target: int,
                    width: Optional[int] = None) -> Circuit:
    """C^k W for W in SU(2) with a real main diagonal: H . C^k(H W H) . H."""
    return _single(w, controls, target, width, "main", "mcsu2_real_main")


def mcsu2_general(w: UnitaryMatrix2, controls: Sequence[int], target: int,
                  width: Optional[int] = None) -> Circuit:
    """C^k W for any W in SU(2), diagonalized when neither diagonal is real."""
    return _single(w, controls, target, width, "auto", "mcsu2_general")


class Su2Request(BaseModel):
    """Payloads W_i (det 1) on distinct targets sharing the same controls."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    payloads: List[UnitaryMatrix2] = Field(min_length=1)
    targets: List[int] = Field(min_length=1)
    controls: List[int] = Field(min_length=1)
    width: Optional[int] = None

    @model_validator(mode="after")
    def _shape(self) -> "Su2Request":
        if len(self.payloads) != len(self.targets):
            raise ValueError(f"{len(self.payloads)} payloads for {len(self.targets)} targets")
        check_distinct(self.controls, self.targets, width=self.width)
        return self


def mcsu2_multi_target(req: Su2Request) -> Circuit:
    """prod_i C^k W_i with the four MCX gates shared across targets."""
    b = CircuitBuilder(fit_width(req.width, req.controls, req.targets), "mcsu2_multi_target")
    add_mcsu2(b, list(zip(req.payloads, req.targets)), req.controls)
    circuit = b.build()
    debug_verify(circuit, req.payloads, ControlSpec(tuple(req.controls), tuple(req.targets)),
                 "mcsu2_multi_target")
    return circuit
