"""
mcgate
Exact and approximate synthesis of multi-controlled single-qubit gates
into one-qubit gates and CNOTs, with a simulation oracle and cost models.
"""

from .algebra import (
    ApproxPlan,
    UnitaryMatrix2,
    eigen_decompose,
    min_base_controls,
    parse_gate,
    plan_approximation,
    root_pow2,
    spectral_error,
)
from .circuit import Circuit, CircuitBuilder, DecompositionReport, from_json, to_json
from .errors import (
    InfeasibleError,
    McgateError,
    NonUnitaryError,
    OracleGuardError,
    PreconditionError,
    SerializationError,
    VerificationError,
)
from .mcsu2 import Su2Request, controlled_u, mcsu2_general, mcsu2_multi_target
from .mcx import McxRequest, mcx_auto, mcx_dirty, mcx_multi_target, toffoli
from .mcu2 import build_layout, extend_controls, mcu_approx, mcu_approx_opt, mcu_auto, mcu_exact
from .qasm import from_qasm, to_qasm
from .strategies import Strategies, load_strategies

__version__ = "0.1.0"
__author__ = "mcgate Team"

# Convenience exports
__all__ = [
    "ApproxPlan",
    "UnitaryMatrix2",
    "eigen_decompose",
    "min_base_controls",
    "parse_gate",
    "plan_approximation",
    "root_pow2",
    "spectral_error",
    "Circuit",
    "CircuitBuilder",
    "DecompositionReport",
    "from_json",
    "to_json",
    "McgateError",
    "PreconditionError",
    "NonUnitaryError",
    "InfeasibleError",
    "OracleGuardError",
    "SerializationError",
    "VerificationError",
    "Su2Request",
    "controlled_u",
    "mcsu2_general",
    "mcsu2_multi_target",
    "McxRequest",
    "mcx_auto",
    "mcx_dirty",
    "mcx_multi_target",
    "toffoli",
    "build_layout",
    "extend_controls",
    "mcu_exact",
    "mcu_approx",
    "mcu_approx_opt",
    "mcu_auto",
    "from_qasm",
    "to_qasm",
    "Strategies",
    "load_strategies",
]
