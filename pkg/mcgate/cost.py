#!/usr/bin/env python3
"""
Closed-form CNOT counts.

Published upper bounds for every construction and baseline, the exact
counts this package's own constructions produce, and the comparison table
written as CSV. All counts are integers; only the planning inputs (n_base
from epsilon, recursion levels from epsilon) involve floating point.
"""

import math
from typing import Iterable, List, Optional

from pydantic import BaseModel, ConfigDict

from .algebra import min_base_controls
from .errors import PreconditionError

CSV_COLUMNS = ("n", "exact", "thm1", "thm3", "barenco_iten", "su2_single", "su2_multi")

_CROSSOVER_LIMIT = 100000


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise PreconditionError(message)


# =============================================================================
# PUBLISHED BOUNDS
# =============================================================================
def exact_count(n: int) -> int:
    """Linear-depth exact C^(n-1) U: 4n^2 - 12n + 10."""
    _require(n >= 3, f"exact count defined for n >= 3, got {n}")
    return 4 * n * n - 12 * n + 10


def barenco_iten_levels(epsilon: float) -> int:
    """Recursion levels k = ceil(log2(1/epsilon))."""
    _require(0.0 < epsilon < 1.0, f"epsilon must lie in (0, 1), got {epsilon}")
    return max(1, math.ceil(math.log2(1.0 / epsilon) - 1e-12))


def barenco_iten_recurrence(n: int, levels: int) -> int:
    """N(n-1) = 32n - 76 + N(n-2), stopped after `levels` levels."""
    _require(levels >= 1, f"levels must be positive, got {levels}")
    _require(n - levels - 1 >= 0, f"n={n} too small for {levels} levels")
    return sum(32 * (n - j) - 76 for j in range(levels))


def barenco_iten_count(n: int, epsilon: float) -> int:
    """Closed form of the recursive approximate baseline: -16k^2 - 60k + 32nk."""
    k = barenco_iten_levels(epsilon)
    _require(n - k - 1 >= 0, f"n={n} too small for {k} recursion levels")
    return -16 * k * k - 60 * k + 32 * n * k


def thm1_bound(n: int, n_base: int) -> int:
    """-28(nb-1)^2 + 2(nb-1)(16n - 40): central Rx gates lowered one by one."""
    _require(n_base >= 1 and n >= n_base, f"need n >= n_base >= 1, got n={n}, n_base={n_base}")
    m = n_base - 1
    return -28 * m * m + 2 * m * (16 * n - 40)


def thm3_formula(n: int, n_base: int) -> int:
    m = n_base - 1
    return 4 * m * m + 32 * n - 112


def thm3_bound(n: int, n_base: int) -> int:
    """4(nb-1)^2 + 32n - 112: each central column as one multi-target block."""
    _require(n_base >= 1 and n >= n_base + 8, f"need n >= n_base + 8, got n={n}, n_base={n_base}")
    return thm3_formula(n, n_base)


def su2_single_bound(n: int) -> int:
    return 16 * n - 40


def su2_general_quoted(n: int) -> int:
    return 20 * n - 42 if n % 2 == 0 else 20 * n - 38


def su2_multi_bound(n: int, nt: int) -> int:
    _require(nt >= 1, f"need at least one target, got {nt}")
    return 16 * n + 16 * (nt - 1) - 40


def toffoli_mt(nt: int) -> int:
    _require(nt >= 1, f"need at least one target, got {nt}")
    return 2 * nt + 4


def mcx_mt_c2x(k: int, nt: int) -> int:
    """Toffoli-class gates in the dirty-ancilla multi-target MCX."""
    return 2 * (2 * k + nt - 5)


# =============================================================================
# THIS PACKAGE'S CONSTRUCTIONS
# =============================================================================
def mcx_cnots(k: int, nt: int = 1) -> int:
    if k == 0:
        return 0
    if k == 1:
        return nt
    if k == 2:
        return 2 * nt + 4
    return 8 * k + 4 * nt - 10


def mcsu2_cnots(k: int, nt: int = 1) -> int:
    """Four-MCX scheme on halves ceil(k/2), floor(k/2); two CNOTs per target at k = 1."""
    _require(k >= 1, f"need at least one control, got {k}")
    if k == 1:
        return 2 * nt
    k1 = (k + 1) // 2
    return 2 * (mcx_cnots(k1, nt) + mcx_cnots(k - k1, nt))


def predicted_cnots(strategy: str, k: int, n_base: int = 1) -> int:
    """CNOT count the named strategy will emit for k controls."""
    _require(k >= 1, f"need at least one control, got {k}")
    exact = exact_count(k + 1) if k >= 2 else 2
    if strategy == "exact" or k <= n_base:
        return exact
    m = n_base - 1
    ne = k - n_base
    if strategy == "approx-thm1":
        return 4 * m * m + 2 * m * mcsu2_cnots(ne + 1, 1)
    if strategy == "approx-thm3":
        return 4 * m * m + (2 * mcsu2_cnots(ne + 1, m) if m > 0 else 0)
    raise PreconditionError(f"unknown strategy '{strategy}'")


# =============================================================================
# TABLES
# =============================================================================
class CostRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    exact: Optional[int] = None
    thm1: Optional[int] = None
    thm3: Optional[int] = None
    barenco_iten: Optional[int] = None
    su2_single: int
    su2_multi: int
    measured: Optional[int] = None


class CostTable(BaseModel):
    epsilon: float
    n_base: int
    k_levels: Optional[int]
    nt: int
    rows: List[CostRow]

    def row(self, n: int) -> CostRow:
        for r in self.rows:
            if r.n == n:
                return r
        raise KeyError(n)


def compare_table(n_range: Iterable[int], epsilon: float, nt: int = 1) -> CostTable:
    """One row per total qubit count; cells outside a formula's domain stay empty."""
    n_base = min_base_controls(math.pi, epsilon)
    k_levels = barenco_iten_levels(epsilon) if epsilon < 1.0 else None
    rows = []
    for n in n_range:
        rows.append(
            CostRow(
                n=n,
                exact=exact_count(n) if n >= 3 else None,
                thm1=thm1_bound(n, n_base) if n >= n_base else None,
                thm3=thm3_bound(n, n_base) if n >= n_base + 8 else None,
                barenco_iten=(
                    barenco_iten_count(n, epsilon)
                    if k_levels is not None and n - k_levels - 1 >= 1
                    else None
                ),
                su2_single=su2_single_bound(n),
                su2_multi=su2_multi_bound(n, nt),
            )
        )
    return CostTable(epsilon=epsilon, n_base=n_base, k_levels=k_levels, nt=nt, rows=rows)


def crossover_vs_exact(epsilon: float) -> int:
    """Least n with thm3_formula(n, nb(epsilon)) < exact_count(n)."""
    n_base = min_base_controls(math.pi, epsilon)
    for n in range(3, _CROSSOVER_LIMIT):
        if thm3_formula(n, n_base) < exact_count(n):
            return n
    raise PreconditionError(f"no crossover below n={_CROSSOVER_LIMIT}")


def to_csv(table: CostTable) -> str:
    columns = list(CSV_COLUMNS)
    if any(r.measured is not None for r in table.rows):
        columns.append("measured")
    lines = [",".join(columns)]
    for r in table.rows:
        values = [getattr(r, c) for c in columns]
        lines.append(",".join("" if v is None else str(v) for v in values))
    return "\n".join(lines) + "\n"
