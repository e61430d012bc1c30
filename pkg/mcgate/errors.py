#!/usr/bin/env python3
"""
mcgate error types.
Every failure raised by the library derives from McgateError so callers
(and the CLI exit-code contract) can dispatch on the class.
"""


class McgateError(Exception):
    """Base class for all mcgate failures."""


class PreconditionError(McgateError, ValueError):
    """Input outside an operation's domain: overlap, classification, range."""


class NonUnitaryError(PreconditionError):
    """A matrix failed the unitarity check."""

    def __init__(self, residual: float, tolerance: float):
        self.residual = residual
        self.tolerance = tolerance
        super().__init__(
            f"matrix is not unitary: residual {residual:.3e} exceeds {tolerance:.0e}"
        )


class InfeasibleError(McgateError):
    """The requested construction cannot be built with the given wires."""


class OracleGuardError(McgateError):
    """A simulation would exceed the configured qubit limit."""

    def __init__(self, width: int, limit: int, mode: str):
        self.width = width
        self.limit = limit
        self.mode = mode
        super().__init__(
            f"{mode} oracle limited to {limit} qubits, circuit has {width}"
        )


class SerializationError(McgateError, ValueError):
    """Malformed circuit JSON or QASM text."""


class VerificationError(McgateError):
    """A circuit disagrees with its reference beyond tolerance."""

    def __init__(self, error: float, tolerance: float, what: str = "circuit"):
        self.error = error
        self.tolerance = tolerance
        super().__init__(f"{what} off by {error:.3e} (tolerance {tolerance:.0e})")
