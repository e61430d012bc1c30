#!/usr/bin/env python3
"""
Multi-controlled X synthesis.

Toffoli (6 CNOTs), the 3-CNOT relative-phase Toffoli, the multi-target
Toffoli (2nt + 4 CNOTs), and the dirty-ancilla V-chain for k >= 3 controls,
single- or multi-target, built as

    TB . P . TB . P

where TB is the exact (multi-target) Toffoli on the targets controlled by
the last control and the top ancilla, and P is the ancilla chain
T_{k-2} ... T_2 T_1 T_2 ... T_{k-2} of relative-phase Toffolis. P is
self-inverse, so its phases cancel between the action and reset passes
and every ancilla returns to its input state.

Adjacent copies of a chain Toffoli inside P share their outer half
(Ry . CX . Ry), which cancels; each pair then costs 4 CNOTs, giving
8k - 6 CNOTs for one target and 8k + 4nt - 10 for nt targets.
"""

import logging
import math
from typing import List, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .algebra import X
from .circuit import Circuit, CircuitBuilder, check_distinct, fit_width
from .errors import InfeasibleError, PreconditionError
from .oracle import ControlSpec, debug_verify

logger = logging.getLogger(__name__)

_QUARTER = math.pi / 4


# =============================================================================
# TOFFOLI FAMILY (builder level)
# =============================================================================
def add_toffoli(b: CircuitBuilder, c1: int, c2: int, t: int) -> None:
    """Exact C2X from H, T, T^dagger and six CNOTs."""
    b.h(t)
    b.cx(c2, t)
    b.tdg(t)
    b.cx(c1, t)
    b.t(t)
    b.cx(c2, t)
    b.tdg(t)
    b.cx(c1, t)
    b.t(c2)
    b.t(t)
    b.h(t)
    b.cx(c1, c2)
    b.t(c1)
    b.tdg(c2)
    b.cx(c1, c2)
    b.tally("c2x")


def _rp_outer(b: CircuitBuilder, outer: int, t: int, sign: float) -> None:
    b.ry(sign * _QUARTER, t)
    b.cx(outer, t)
    b.ry(sign * _QUARTER, t)


def add_rp_toffoli(b: CircuitBuilder, c1: int, c2: int, t: int) -> None:
    """Margolus gate: C2X up to a -1 on |c1=1, c2=0, t=1>; self-inverse."""
    _rp_outer(b, c2, t, 1.0)
    b.cx(c1, t)
    _rp_outer(b, c2, t, -1.0)
    b.tally("rp_c2x")


def add_multi_target_toffoli(b: CircuitBuilder, c1: int, c2: int, targets: Sequence[int]) -> None:
    """C2X on every target: fan the first target's change out with CNOTs."""
    first, rest = targets[0], targets[1:]
    for t in rest:
        b.cx(first, t)
    add_toffoli(b, c1, c2, first)
    for t in rest:
        b.cx(first, t)
    b.tally("c2x", len(rest))


def _chain(b: CircuitBuilder, controls: Sequence[int], ancillas: Sequence[int]) -> None:
    """P: toggles ancillas[k-3] by AND(controls[:k-1]); P . P = I."""
    k = len(controls)
    # T_i: ancillas[i-1] ^= controls[i] . ancillas[i-2]  (1-based i, 2 <= i <= k-2)
    for i in range(k - 2, 1, -1):
        target, lower, outer = ancillas[i - 1], ancillas[i - 2], controls[i]
        _rp_outer(b, outer, target, 1.0)
        b.cx(lower, target)
    add_rp_toffoli(b, controls[0], controls[1], ancillas[0])
    for i in range(2, k - 1):
        target, lower, outer = ancillas[i - 1], ancillas[i - 2], controls[i]
        b.cx(lower, target)
        _rp_outer(b, outer, target, -1.0)
    b.tally("rp_c2x", 2 * (k - 3))


def add_mcx_vchain(b: CircuitBuilder, controls: Sequence[int], targets: Sequence[int],
                   ancillas: Sequence[int]) -> None:
    """Exact prod_t C^kX_t for k >= 3 with k - 2 dirty ancillas."""
    k = len(controls)
    if k < 3:
        raise PreconditionError(f"the V-chain needs at least 3 controls, got {k}")
    if len(ancillas) < k - 2:
        raise InfeasibleError(f"{k} controls need {k - 2} dirty ancillas, only {len(ancillas)} available")
    used = list(ancillas[: k - 2])
    top = used[-1]
    for _ in range(2):
        add_multi_target_toffoli(b, controls[-1], top, targets)
        _chain(b, controls, used)
    b.tally("mcx")


def add_mcx(b: CircuitBuilder, controls: Sequence[int], targets: Sequence[int],
            free_qubits: Sequence[int] = ()) -> None:
    """Dispatch on the number of controls; free_qubits may be borrowed dirty."""
    k = len(controls)
    if k == 0:
        for t in targets:
            b.x(t)
    elif k == 1:
        for t in targets:
            b.cx(controls[0], t)
    elif k == 2:
        add_multi_target_toffoli(b, controls[0], controls[1], targets)
    else:
        busy = set(controls) | set(targets)
        pool = sorted(q for q in free_qubits if q not in busy)
        add_mcx_vchain(b, controls, targets, pool)


# =============================================================================
# PUBLIC CONSTRUCTORS
# =============================================================================
def toffoli(c1: int, c2: int, t: int, width: Optional[int] = None) -> Circuit:
    check_distinct((c1, c2, t))
    b = CircuitBuilder(fit_width(width, (c1, c2, t)), "toffoli")
    add_toffoli(b, c1, c2, t)
    return b.build()


def rp_toffoli(c1: int, c2: int, t: int, width: Optional[int] = None) -> Circuit:
    check_distinct((c1, c2, t))
    b = CircuitBuilder(fit_width(width, (c1, c2, t)), "rp_toffoli")
    add_rp_toffoli(b, c1, c2, t)
    return b.build()


def multi_target_toffoli(c1: int, c2: int, targets: Sequence[int], width: Optional[int] = None) -> Circuit:
    if not targets:
        raise PreconditionError("multi_target_toffoli needs at least one target")
    check_distinct((c1, c2), targets)
    b = CircuitBuilder(fit_width(width, (c1, c2), targets), "multi_target_toffoli")
    add_multi_target_toffoli(b, c1, c2, list(targets))
    return b.build()


class McxRequest(BaseModel):
    """Controls, targets and borrowable dirty wires of one MCX."""

    model_config = ConfigDict(frozen=True)

    controls: List[int]
    targets: List[int] = Field(min_length=1)
    dirty_ancillas: List[int] = Field(default_factory=list)
    width: Optional[int] = None

    @model_validator(mode="after")
    def _disjoint(self) -> "McxRequest":
        check_distinct(self.controls, self.targets, self.dirty_ancillas, width=self.width)
        return self

    @property
    def n_wires(self) -> int:
        return fit_width(self.width, self.controls, self.targets, self.dirty_ancillas)


def _check_vchain(req: McxRequest) -> None:
    k = len(req.controls)
    if k < 3:
        raise PreconditionError(f"dirty-ancilla MCX needs k >= 3 controls, got {k}")
    if len(req.dirty_ancillas) < k - 2:
        raise InfeasibleError(
            f"{k} controls need {k - 2} dirty ancillas, got {len(req.dirty_ancillas)}"
        )


def mcx_dirty(req: McxRequest) -> Circuit:
    """Exact C^kX with k - 2 borrowed ancillas restored for every input."""
    if len(req.targets) != 1:
        raise PreconditionError("mcx_dirty takes exactly one target; use mcx_multi_target")
    return mcx_multi_target(req).with_name("mcx_dirty")


def mcx_multi_target(req: McxRequest) -> Circuit:
    """Exact prod_t C^kX_t; 2(2k + nt - 5) Toffoli-class gates."""
    _check_vchain(req)
    b = CircuitBuilder(req.n_wires, "mcx_multi_target")
    add_mcx_vchain(b, req.controls, req.targets, sorted(req.dirty_ancillas))
    circuit = b.build()
    logger.debug("mcx k=%d nt=%d: %d CNOTs", len(req.controls), len(req.targets), circuit.cnot_count())
    debug_verify(circuit, X, ControlSpec(tuple(req.controls), tuple(req.targets)), "mcx")
    return circuit


def mcx_auto(controls: Sequence[int], targets: Sequence[int], free_qubits: Sequence[int] = (),
             width: Optional[int] = None) -> Circuit:
    """X (k=0), CNOT fan (k=1), multi-target Toffoli (k=2), V-chain (k>=3)."""
    if not targets:
        raise PreconditionError("mcx_auto needs at least one target")
    check_distinct(controls, targets)
    b = CircuitBuilder(fit_width(width, controls, targets, free_qubits), "mcx_auto")
    add_mcx(b, list(controls), list(targets), free_qubits)
    return b.build()
