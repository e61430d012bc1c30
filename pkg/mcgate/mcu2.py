#!/usr/bin/env python3
"""
Multi-controlled U(2) synthesis.

The exact construction is a linear-depth layout of singly-controlled gates
over layout positions 0..k (position 0 is the first control b1, position k
the target), arranged in two triangles. Each triangle starts with a pass of
controlled Rx(+-pi/2^m) and controlled U^(+-1/2^m) gates and ends with the
matching inverse pass. The gates controlled by b1 form the central column;
the first triangle's central column carries the root U^(1/2^(k-1)).

Extra controls attach to the central column only. Dropping the root gate
from an extended layout leaves an approximation whose error is governed by
the spectral distance of U^(1/2^(nb-1)) from the identity, at a CNOT cost
linear in the number of extra controls.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import algebra, cost
from .algebra import EigenSystem, UnitaryMatrix2
from .circuit import Circuit, CircuitBuilder, DecompositionReport, check_distinct, fit_width
from .errors import PreconditionError
from .mcsu2 import add_controlled_u, add_mcsu2
from .oracle import ControlSpec, debug_verify, distance

logger = logging.getLogger(__name__)

EXACT = "exact"
APPROX_THM1 = "approx-thm1"
APPROX_THM3 = "approx-thm3"
AUTO = "auto"


# =============================================================================
# LAYOUT
# =============================================================================
@dataclass(frozen=True)
class LayoutOp:
    """Singly-controlled gate between layout positions."""

    triangle: int
    control: int
    target: int
    kind: str  # "rx" or "upow"
    sign: int
    exponent: int

    @property
    def central(self) -> bool:
        return self.control == 0

    @property
    def fraction(self) -> float:
        return self.sign / float(1 << self.exponent)

    def matrix(self, spectrum: Optional[EigenSystem]) -> UnitaryMatrix2:
        if self.kind == "rx":
            return algebra.rx(self.fraction * math.pi)
        if spectrum is None:
            raise PreconditionError("layout is not bound to a unitary")
        return spectrum.reconstruct(self.fraction)

    def describe(self) -> str:
        name = f"rx({'-' if self.sign < 0 else ''}pi/{1 << self.exponent})"
        if self.kind == "upow":
            name = f"U^({'-' if self.sign < 0 else ''}1/{1 << self.exponent})"
        return f"C{self.control}-{name}@{self.target}"

    def to_dict(self) -> Dict[str, object]:
        return {
            "triangle": self.triangle,
            "control": self.control,
            "target": self.target,
            "kind": self.kind,
            "sign": self.sign,
            "exponent": self.exponent,
        }


def _pass(n_positions: int, first: bool, step: int, triangle: int) -> List[LayoutOp]:
    start = 0 if step == 1 else 1
    pairs = [(c, t) for t in range(n_positions) for c in range(start, t)]
    pairs.sort(key=lambda p: p[0] + p[1], reverse=(step == 1))

    ops = []
    for c, t in pairs:
        exponent = t - c - (1 if c == 0 else 0)
        sign = (-1 if (c == 0 and not first) else 1) * step
        kind = "upow" if (first and t == n_positions - 1) else "rx"
        ops.append(LayoutOp(triangle, c, t, kind, sign, exponent))

    if step == 1:
        # b1-controlled gates commute past the rest of the pass
        ops = [op for op in ops if not op.central] + [op for op in ops if op.central]
    return ops


@dataclass(frozen=True)
class TriangleLayout:
    """Gate layout for C^nb U, optionally bound to U and concrete wires."""

    n_base: int
    ops: Tuple[LayoutOp, ...]
    u: Optional[UnitaryMatrix2] = None
    wires: Tuple[int, ...] = ()
    width: int = 0
    spectrum: Optional[EigenSystem] = field(default=None, repr=False, compare=False)

    @property
    def first_triangle(self) -> Tuple[LayoutOp, ...]:
        return tuple(op for op in self.ops if op.triangle == 1)

    @property
    def second_triangle(self) -> Tuple[LayoutOp, ...]:
        return tuple(op for op in self.ops if op.triangle == 2)

    @property
    def central_column(self) -> Tuple[LayoutOp, ...]:
        return tuple(op for op in self.ops if op.central)

    @property
    def root_op(self) -> LayoutOp:
        return next(op for op in self.ops if op.central and op.kind == "upow")

    @property
    def base_controls(self) -> Tuple[int, ...]:
        return self.wires[:-1]

    @property
    def target(self) -> int:
        return self.wires[-1]

    def bind(self, u: UnitaryMatrix2, controls: Sequence[int], target: int,
             width: Optional[int] = None) -> "TriangleLayout":
        if len(controls) != self.n_base:
            raise PreconditionError(f"layout takes {self.n_base} controls, got {len(controls)}")
        check_distinct(controls, (target,), width=width)
        return TriangleLayout(
            self.n_base,
            self.ops,
            u,
            tuple(controls) + (target,),
            fit_width(width, controls, (target,)),
            algebra.eigen_decompose(u),
        )

    def to_list(self) -> List[Dict[str, object]]:
        return [op.to_dict() for op in self.ops]


def build_layout(n_base: int) -> TriangleLayout:
    """Unbound layout for n_base controls: (n_base)^2 + (n_base - 1)^2 controlled gates."""
    if n_base < 1:
        raise PreconditionError(f"a layout needs at least one control, got {n_base}")
    n = n_base + 1
    ops = (
        _pass(n, True, 1, 1)
        + _pass(n, True, -1, 1)
        + _pass(n - 1, False, 1, 2)
        + _pass(n - 1, False, -1, 2)
    )
    return TriangleLayout(n_base, tuple(ops))


# =============================================================================
# LOWERING
# =============================================================================
def _lower(b: CircuitBuilder, layout: TriangleLayout, extra: Sequence[int], mode: str) -> None:
    """Lower a bound layout; central gates get the extra controls.

    mode "exact" keeps the root gate, "thm1" drops it and lowers each central
    Rx on its own, "thm3" drops it and merges each central column into one
    multi-target block.
    """
    wires = layout.wires
    spectrum = layout.spectrum
    column: List[Tuple[UnitaryMatrix2, int]] = []

    def flush() -> None:
        if column:
            add_mcsu2(b, list(column), [*extra, wires[0]], path="main")
            column.clear()

    for op in layout.ops:
        matrix = op.matrix(spectrum)
        target = wires[op.target]
        if not op.central or not extra:
            flush()
            add_controlled_u(b, matrix, wires[op.control], target)
            b.tally("c1u")
        elif op.kind == "upow":
            flush()
            if mode == "exact":
                _add_exact(b, matrix, [*extra, wires[0]], target)
            else:
                logger.debug("dropping root %s", op.describe())
        elif mode == "thm3":
            column.append((matrix, target))
        else:
            add_mcsu2(b, [(matrix, target)], [*extra, wires[0]], path="main")
    flush()


def _add_exact(b: CircuitBuilder, u: UnitaryMatrix2, controls: Sequence[int], target: int) -> TriangleLayout:
    layout = build_layout(len(controls)).bind(u, controls, target, b.width)
    _lower(b, layout, (), "exact")
    return layout


def _check_request(controls: Sequence[int], target: int, width: Optional[int]) -> int:
    if not controls:
        raise PreconditionError("a multi-controlled gate needs at least one control")
    check_distinct(controls, (target,), width=width)
    return fit_width(width, controls, (target,))


def _exact_bound(n: int) -> int:
    return cost.exact_count(n) if n >= 3 else 2


def _measure(report: DecompositionReport, u: UnitaryMatrix2, controls: Sequence[int], target: int,
             verify: Optional[str]) -> DecompositionReport:
    if verify:
        report.oracle_error = distance(report.circuit, u, ControlSpec.single(controls, target), verify)
    return report


# =============================================================================
# STRATEGIES
# =============================================================================
def mcu_exact(u: UnitaryMatrix2, controls: Sequence[int], target: int, width: Optional[int] = None,
              verify: Optional[str] = None) -> DecompositionReport:
    """Exact C^k U with 4n^2 - 12n + 10 CNOTs, n = k + 1."""
    u = algebra.UnitaryMatrix2(algebra.as_array(u))
    width = _check_request(controls, target, width)
    b = CircuitBuilder(width, f"c{len(controls)}u_exact")
    layout = _add_exact(b, u, list(controls), target)
    circuit = b.build()
    debug_verify(circuit, u, ControlSpec.single(controls, target), "mcu_exact")
    report = DecompositionReport(
        circuit=circuit, strategy=EXACT, bound=_exact_bound(len(controls) + 1), layout=layout
    )
    return _measure(report, u, controls, target, verify)


def extend_controls(layout: TriangleLayout, extra_controls: Sequence[int]) -> Circuit:
    """Exact C^(nb+ne) U from a bound layout: extra controls join every central gate."""
    if layout.u is None:
        raise PreconditionError("extend_controls needs a layout bound to a unitary")
    width = max(layout.width, fit_width(None, layout.wires, extra_controls))
    check_distinct(layout.wires, extra_controls, width=width)
    b = CircuitBuilder(width, f"c{layout.n_base + len(extra_controls)}u_extended")
    _lower(b, _rebind(layout, width), list(extra_controls), "exact")
    return b.build()


def _rebind(layout: TriangleLayout, width: int) -> TriangleLayout:
    if width == layout.width:
        return layout
    return layout.bind(layout.u, layout.base_controls, layout.target, width)


def _approximate(u: UnitaryMatrix2, controls: Sequence[int], target: int, epsilon: float,
                 width: Optional[int], verify: Optional[str], mode: str, strategy: str) -> DecompositionReport:
    u = algebra.UnitaryMatrix2(algebra.as_array(u))
    width = _check_request(controls, target, width)
    if not (0.0 < epsilon < 2.0):
        raise PreconditionError(f"epsilon must lie in (0, 2), got {epsilon}")
    plan = algebra.plan_approximation(u, epsilon)
    k = len(controls)
    if k <= plan.n_base:
        logger.info("%d controls within %d base controls: exact construction", k, plan.n_base)
        report = mcu_exact(u, controls, target, width, verify)
        report.plan = plan
        return report

    nb = plan.n_base
    base, extra = list(controls[:nb]), list(controls[nb:])
    layout = build_layout(nb).bind(u, base, target, width)
    b = CircuitBuilder(width, f"c{k}u_{strategy}")
    _lower(b, layout, extra, mode)
    n = k + 1
    if mode == "thm1":
        bound = cost.thm1_bound(n, nb)
    else:
        # n_base = 1 leaves no central Rx at all
        bound = cost.thm3_formula(n, nb) if nb > 1 else 0
    report = DecompositionReport(circuit=b.build(), strategy=strategy, bound=bound, plan=plan, layout=layout)
    logger.info("%s", report.summary())
    return _measure(report, u, controls, target, verify)


def mcu_approx(u: UnitaryMatrix2, controls: Sequence[int], target: int, epsilon: float,
               width: Optional[int] = None, verify: Optional[str] = None) -> DecompositionReport:
    """Approximate C^k U; each central Rx lowered as its own multi-controlled SU(2)."""
    return _approximate(u, controls, target, epsilon, width, verify, "thm1", APPROX_THM1)


def mcu_approx_opt(u: UnitaryMatrix2, controls: Sequence[int], target: int, epsilon: float,
                   width: Optional[int] = None, verify: Optional[str] = None) -> DecompositionReport:
    """Approximate C^k U; each central column lowered as one multi-target SU(2) block."""
    return _approximate(u, controls, target, epsilon, width, verify, "thm3", APPROX_THM3)


def mcu_auto(u: UnitaryMatrix2, controls: Sequence[int], target: int, epsilon: Optional[float] = None,
             width: Optional[int] = None, verify: Optional[str] = None) -> DecompositionReport:
    """Cheapest predicted strategy; exact whenever epsilon is omitted."""
    from .strategies import load_strategies

    if epsilon is None:
        return mcu_exact(u, controls, target, width, verify)
    registry = load_strategies(silent=True)
    name = registry.cheapest(u, len(controls), epsilon)
    logger.info("auto selected %s for %d controls", name, len(controls))
    return registry.build(name, u, controls, target, epsilon=epsilon, width=width, verify=verify)
