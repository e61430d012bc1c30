#!/usr/bin/env python3
"""
mcgate CLI
Decompose multi-controlled gates, verify circuits against the oracle,
plan base controls and print CNOT cost comparisons.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Tuple

from pydantic import BaseModel, ValidationError, field_validator, model_validator

from . import algebra, config, cost, mcu2, oracle
from .circuit import Circuit, from_json, to_json
from .errors import (
    InfeasibleError,
    OracleGuardError,
    PreconditionError,
    SerializationError,
    VerificationError,
)
from .qasm import from_qasm, to_qasm
from .strategies import load_strategies

EXACT_TOLERANCE = 1e-9
MEASURED_MAX_N = 20


class CliConfig(BaseModel):
    """Validated decompose/verify options."""

    command: str
    gate: str = "x"
    controls: int = 1
    epsilon: Optional[float] = None
    strategy: str = mcu2.AUTO
    format: str = "qasm"
    verify: str = "off"
    output: Optional[str] = None

    @field_validator("controls")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError(f"--controls must be at least 1, got {value}")
        return value

    @field_validator("verify")
    @classmethod
    def _verify_mode(cls, value: str) -> str:
        parse_verify_mode(value)
        return value

    @model_validator(mode="after")
    def _combination(self) -> "CliConfig":
        if self.strategy not in (mcu2.EXACT, mcu2.APPROX_THM1, mcu2.APPROX_THM3, mcu2.AUTO):
            raise ValueError(f"unknown strategy '{self.strategy}'")
        if self.strategy in (mcu2.APPROX_THM1, mcu2.APPROX_THM3) and self.epsilon is None:
            raise ValueError(f"strategy '{self.strategy}' requires --epsilon")
        if self.epsilon is not None and not (0.0 < self.epsilon < 2.0):
            raise ValueError(f"--epsilon must lie in (0, 2), got {self.epsilon}")
        if self.format not in ("qasm", "json"):
            raise ValueError(f"unknown format '{self.format}'")
        return self


def parse_verify_mode(text: str) -> Tuple[str, int, int]:
    """'full', 'patterns', 'off' or 'sampled[:N[:seed]]' -> (mode, count, seed)."""
    parts = text.split(":")
    mode = parts[0]
    if mode in ("full", "patterns", "off") and len(parts) == 1:
        return mode, 0, 0
    if mode == "sampled" and len(parts) <= 3:
        try:
            count = int(parts[1]) if len(parts) > 1 else oracle.DEFAULT_SAMPLED_COLUMNS
            seed = int(parts[2]) if len(parts) > 2 else 0
        except ValueError:
            raise PreconditionError(f"bad sampled mode '{text}'")
        return mode, count, seed
    raise PreconditionError(f"unknown verify mode '{text}'")


def _exit_code(error: BaseException) -> int:
    if isinstance(error, VerificationError):
        return 4
    if isinstance(error, (InfeasibleError, OracleGuardError)):
        return 3
    if isinstance(error, (PreconditionError, SerializationError, ValidationError)):
        return 2
    return 1


def _measure(circuit: Circuit, u, spec: oracle.ControlSpec, verify: str) -> Optional[float]:
    mode, count, seed = parse_verify_mode(verify)
    if mode == "off":
        return None
    if mode == "sampled":
        return oracle.distance(circuit, u, spec, "sampled", count=count, seed=seed)
    return oracle.distance(circuit, u, spec, mode)


def _write(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text)
        print(f"✅ Wrote {output}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def _load_circuit(path: str) -> Circuit:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return from_json(text)
    return from_qasm(text)


def cmd_decompose(args):
    """Decompose C^k U and write the circuit."""
    cfg = CliConfig(
        command="decompose",
        gate=args.gate,
        controls=args.controls,
        epsilon=args.epsilon,
        strategy=args.strategy,
        format=args.format,
        verify=args.verify,
        output=args.output,
    )
    u = algebra.parse_gate(cfg.gate)
    controls = list(range(cfg.controls))
    target = cfg.controls

    report = load_strategies(silent=True).build(cfg.strategy, u, controls, target, epsilon=cfg.epsilon)
    spec = oracle.ControlSpec.single(controls, target)
    report.oracle_error = _measure(report.circuit, u, spec, cfg.verify)

    text = to_qasm(report.circuit) if cfg.format == "qasm" else to_json(report.circuit, indent=2) + "\n"
    _write(text, cfg.output)
    print(report.summary())

    if report.oracle_error is not None:
        approximate = report.strategy != mcu2.EXACT and cfg.epsilon is not None
        tolerance = cfg.epsilon if approximate else EXACT_TOLERANCE
        if report.oracle_error > tolerance:
            raise VerificationError(report.oracle_error, tolerance, report.strategy)


def cmd_basecontrols(args):
    """Print n_base, N and the predicted error."""
    if (args.theta is None) == (args.gate is None):
        raise PreconditionError("give exactly one of --theta or --gate")
    if args.gate is not None:
        plan = algebra.plan_approximation(algebra.parse_gate(args.gate), args.epsilon)
        n_base, big_n, predicted = plan.n_base, plan.big_n, plan.predicted_error
    else:
        theta = abs(algebra.parse_angle(args.theta))
        n_base = algebra.min_base_controls(theta, args.epsilon)
        big_n = 1 << (n_base - 1)
        predicted = algebra.predicted_error(theta, big_n)
    print(f"nb={n_base} N={big_n} predicted_error={predicted:.6e}")


def cmd_verify(args):
    """Compare a circuit file with the ideal multi-controlled gate."""
    circuit = _load_circuit(args.circuit)
    u = algebra.parse_gate(args.against)
    controls = list(range(args.controls))
    target = args.controls if args.target is None else args.target
    spec = oracle.ControlSpec.single(controls, target)
    spec.validate(circuit.width)

    mode, count, seed = parse_verify_mode(args.mode)
    if mode == "off":
        raise PreconditionError("verify needs a mode other than 'off'")
    if mode == "patterns":
        report = oracle.pattern_distances(circuit, u, spec)
        for p in report.patterns:
            print(f"pattern={p.name} error={p.error:.3e} leakage={p.leakage:.3e}")
        error = report.max_error
    else:
        error = _measure(circuit, u, spec, args.mode)

    print(f"mode={mode} width={circuit.width} cnots={circuit.cnot_count()} distance={error:.3e}")
    if error > args.tolerance:
        raise VerificationError(error, args.tolerance, args.circuit)
    print("✅ Circuit matches within tolerance", file=sys.stderr)


def cmd_compare(args):
    """Emit the CNOT comparison table as CSV."""
    if args.n_to < args.n_from:
        raise PreconditionError(f"--n-to {args.n_to} is below --n-from {args.n_from}")
    table = cost.compare_table(range(args.n_from, args.n_to + 1), args.epsilon, args.nt)
    if args.measured:
        rows = []
        for row in table.rows:
            measured = None
            if 2 <= row.n <= MEASURED_MAX_N:
                k = row.n - 1
                report = mcu2.mcu_approx_opt(algebra.X, list(range(k)), k, args.epsilon)
                measured = report.cnot_count
            rows.append(row.model_copy(update={"measured": measured}))
        table = table.model_copy(update={"rows": rows})
    _write(cost.to_csv(table), args.output)


def cmd_strategies(args):
    """List the registered strategies."""
    registry = load_strategies(silent=True)
    print(f"📦 Strategies ({len(registry.list_strategies())}):")
    print()
    for name, info in registry.list_metadata().items():
        print(f"🧩 {name}")
        print(f"   {info['description']}")
        print(f"   Bound: {info['bound']}")
        if info["requires_epsilon"]:
            print("   Requires --epsilon")
        print()


def cmd_env(args):
    """Environment template, summary or validation."""
    if args.action == "template":
        output_file = args.output or ".env.template"
        config.generate_env_template(output_file)
        print(f"✅ Generated {output_file}")
        print(f"🔧 {len(config.ENVIRONMENT_VARIABLES)} environment variables")
    elif args.action == "summary":
        print(config.get_env_summary())
    else:
        problems = config.validate_env_vars()
        if problems:
            print("❌ Invalid environment variables:")
            for problem in problems:
                print(f"   • {problem}")
            sys.exit(2)
        print("✅ All environment variables are valid")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcgate",
        description="mcgate - multi-controlled single-qubit gate synthesis",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  mcgate decompose --gate x --controls 4 --strategy exact
  mcgate decompose --gate "rx(pi/4)" --controls 12 --epsilon 1e-3 -o c12.qasm
  mcgate basecontrols --theta pi --epsilon 1e-3
  mcgate verify c12.qasm --against "rx(pi/4)" --controls 12 --mode patterns
  mcgate compare --epsilon 1e-3 --n-from 14 --n-to 40
        """,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    dec = subparsers.add_parser("decompose", help="Decompose a multi-controlled gate")
    dec.add_argument("--gate", default="x", help="Named gate, rx(θ)/ry/rz/p/u(θ,φ,λ) or JSON matrix")
    dec.add_argument("--controls", type=int, required=True, help="Number of controls k")
    dec.add_argument("--epsilon", type=float, help="Approximation tolerance")
    dec.add_argument("--strategy", default=mcu2.AUTO,
                     choices=[mcu2.EXACT, mcu2.APPROX_THM1, mcu2.APPROX_THM3, mcu2.AUTO])
    dec.add_argument("--format", default="qasm", choices=["qasm", "json"])
    dec.add_argument("--verify", default="off", help="full | sampled[:N[:seed]] | patterns | off")
    dec.add_argument("-o", "--output", help="Output file (default: stdout)")
    dec.set_defaults(func=cmd_decompose)

    base = subparsers.add_parser("basecontrols", help="Base controls needed for a tolerance")
    base.add_argument("--theta", help="Eigenphase magnitude (radians, 'pi' accepted)")
    base.add_argument("--gate", help="Gate whose largest eigenphase is used")
    base.add_argument("--epsilon", type=float, required=True)
    base.set_defaults(func=cmd_basecontrols)

    ver = subparsers.add_parser("verify", help="Verify a circuit file against the oracle")
    ver.add_argument("circuit", help="Circuit file (JSON or OpenQASM 2.0)")
    ver.add_argument("--against", required=True, help="Gate the circuit should implement")
    ver.add_argument("--controls", type=int, required=True, help="Controls are qubits 0..k-1")
    ver.add_argument("--target", type=int, help="Target qubit (default: k)")
    ver.add_argument("--mode", default="full", help="full | sampled[:N[:seed]] | patterns")
    ver.add_argument("--tolerance", type=float, default=EXACT_TOLERANCE)
    ver.set_defaults(func=cmd_verify)

    cmp_parser = subparsers.add_parser("compare", help="CSV of CNOT counts per n")
    cmp_parser.add_argument("--epsilon", type=float, required=True)
    cmp_parser.add_argument("--n-from", type=int, required=True)
    cmp_parser.add_argument("--n-to", type=int, required=True)
    cmp_parser.add_argument("--nt", type=int, default=1, help="Targets for the su2_multi column")
    cmp_parser.add_argument("--measured", action="store_true",
                            help=f"Append constructed counts for n <= {MEASURED_MAX_N}")
    cmp_parser.add_argument("-o", "--output", help="Output file (default: stdout)")
    cmp_parser.set_defaults(func=cmd_compare)

    strat = subparsers.add_parser("strategies", help="List synthesis strategies")
    strat.set_defaults(func=cmd_strategies)

    env = subparsers.add_parser("env", help="Environment variables")
    env.add_argument("action", choices=["template", "summary", "validate"])
    env.add_argument("-o", "--output", help="Template file (default: .env.template)")
    env.set_defaults(func=cmd_env)

    return parser


def main(argv=None):
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return

    try:
        level = logging.WARNING
        if args.command != "env":
            level = getattr(logging, config.get_settings().log_level)
        if args.verbose:
            level = logging.DEBUG
        logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
        args.func(args)
    except KeyboardInterrupt:
        print("\n⚠️  Interrupted by user", file=sys.stderr)
        sys.exit(1)
    except Exception as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        sys.exit(_exit_code(e))


if __name__ == "__main__":
    main()
