#!/usr/bin/env python3
"""
Strategy registry.
Maps strategy names to their builders, their published bound and the cost
prediction used for automatic selection.
"""

from typing import Any, Callable, Dict, List, Optional, Sequence

from . import algebra, cost, mcu2
from .algebra import UnitaryMatrix2
from .circuit import DecompositionReport
from .errors import PreconditionError


class Strategies:
    """Registry of multi-controlled U(2) strategies."""

    def __init__(self, silent: bool = False):
        self.silent = silent
        self.builders: Dict[str, Callable[..., DecompositionReport]] = {}
        self.metadata: Dict[str, Dict[str, Any]] = {}

        self.load_defaults()

    def _log(self, message: str) -> None:
        """Print message if not in silent mode."""
        if not self.silent:
            print(f"🧩 {message}")

    def register(self, name: str, builder: Callable[..., DecompositionReport], **info: Any) -> None:
        """Register a builder; info carries description, bound and requires_epsilon."""
        self.builders[name] = builder
        self.metadata[name] = {
            "name": name,
            "description": info.get("description", ""),
            "bound": info.get("bound", ""),
            "requires_epsilon": bool(info.get("requires_epsilon", False)),
        }
        self._log(f"✅ Registered {name}")

    def load_defaults(self) -> int:
        self.register(
            mcu2.EXACT,
            lambda u, controls, target, epsilon=None, **kw: mcu2.mcu_exact(u, controls, target, **kw),
            description="exact linear-depth C^kU",
            bound="4n^2 - 12n + 10",
        )
        self.register(
            mcu2.APPROX_THM1,
            mcu2.mcu_approx,
            description="approximate, central Rx gates lowered individually",
            bound="-28(nb-1)^2 + 2(nb-1)(16n-40)",
            requires_epsilon=True,
        )
        self.register(
            mcu2.APPROX_THM3,
            mcu2.mcu_approx_opt,
            description="approximate, central columns as multi-target SU(2) blocks",
            bound="4(nb-1)^2 + 32n - 112 (n >= nb + 8)",
            requires_epsilon=True,
        )
        self.register(
            mcu2.AUTO,
            mcu2.mcu_auto,
            description="cheapest predicted strategy; exact without epsilon",
            bound="min of the above",
        )
        return len(self.builders)

    def get(self, name: str) -> Callable[..., DecompositionReport]:
        if name not in self.builders:
            raise PreconditionError(f"unknown strategy '{name}' (choose from {', '.join(self.builders)})")
        return self.builders[name]

    def list_strategies(self) -> List[str]:
        return list(self.builders.keys())

    def list_metadata(self) -> Dict[str, Dict[str, Any]]:
        return {name: dict(info) for name, info in self.metadata.items()}

    def predict(self, name: str, u: UnitaryMatrix2, k: int, epsilon: Optional[float] = None) -> int:
        """CNOT count `name` would produce for k controls."""
        if name == mcu2.EXACT or epsilon is None:
            return cost.predicted_cnots(mcu2.EXACT, k)
        if name == mcu2.AUTO:
            return min(self.predict(n, u, k, epsilon) for n in self._concrete())
        plan = algebra.plan_approximation(u, epsilon)
        return cost.predicted_cnots(name, k, plan.n_base)

    def _concrete(self) -> List[str]:
        return [n for n in self.builders if n != mcu2.AUTO]

    def cheapest(self, u: UnitaryMatrix2, k: int, epsilon: Optional[float]) -> str:
        """Lowest predicted count; ties go to the earlier-registered strategy."""
        candidates = self._concrete() if epsilon is not None else [mcu2.EXACT]
        return min(candidates, key=lambda n: self.predict(n, u, k, epsilon))

    def build(self, name: str, u: UnitaryMatrix2, controls: Sequence[int], target: int,
              epsilon: Optional[float] = None, **kwargs: Any) -> DecompositionReport:
        builder = self.get(name)
        if self.metadata[name]["requires_epsilon"]:
            if epsilon is None:
                raise PreconditionError(f"strategy '{name}' requires epsilon")
            return builder(u, controls, target, epsilon, **kwargs)
        return builder(u, controls, target, epsilon=epsilon, **kwargs)


def load_strategies(silent: bool = False) -> Strategies:
    """Create the registry with the built-in strategies."""
    return Strategies(silent)
