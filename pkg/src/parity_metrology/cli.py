"""Command-line front end.

Subcommands::

    state        dump the amplitudes of an input state
    signal       observable mean/variance/SNR over a phase grid
    uncertainty  twin-Fock parity phase uncertainty versus 2N
    joint        joint photon-number distribution of an input state
    verify       run the closed-form checks

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from typing import Any, Sequence

import numpy as np

from . import detection, verification
from .errors import SimulationError
from .fock_space import TwoModeState
from .metrology import FAMILIES, StateFamily, sweep_signal, sweep_uncertainty
from .optical_elements import MziConfig
from .state_factory import DEFAULT_TAIL_EPSILON

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3
DEFAULT_UNCERTAINTY_PHIS = (0.0001, 0.05)


class ConfigError(ValueError):
    pass


def format_value(value: Any) -> str:
    """Fixed CSV rendering: 17 significant digits in lowercase e-notation."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.16e}"


def _json_value(value: Any) -> Any:
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isfinite(value):
            return value
        return format_value(value)
    return value


def render(columns: Sequence[str], rows: Sequence[Sequence[Any]], fmt: str,
           header: dict[str, Any] | None = None) -> str:
    """Serialize rows as CSV (optional ``# key=value`` header lines) or JSON."""
    if fmt == "json":
        doc: dict[str, Any] = dict(header or {})
        doc["rows"] = [{c: _json_value(v) for c, v in zip(columns, row)} for row in rows]
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    for key, val in (header or {}).items():
        buf.write(f"# {key}={format_value(val) if isinstance(val, float) else val}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(format_value(v) for v in row) + "\n")
    return buf.getvalue()


def _parse_alpha(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise ConfigError(f"--alpha: cannot parse {text!r} as a complex number") from None


def family_from_args(args: argparse.Namespace) -> StateFamily:
    name = args.family.replace("-", "_")
    if name not in FAMILIES:
        raise ConfigError(f"--family: unknown family {args.family!r}; choose from {', '.join(FAMILIES)}")
    ns = list(args.n or [])
    kwargs: dict[str, Any] = {
        "alpha": _parse_alpha(args.alpha),
        "phi_n": args.phi_n,
        "theta": args.theta,
        "rel_phase": args.rel_phase,
        "tail_epsilon": args.tail_eps,
    }
    if name == "number":
        if len(ns) != 2:
            raise ConfigError("--n: the number family needs two counts, e.g. --n 1 0")
        kwargs.update(n=ns[0], n_b=ns[1])
    elif name in ("noon", "twin_fock", "arcsine"):
        if len(ns) != 1:
            raise ConfigError(f"--n: the {name} family needs a single photon number")
        kwargs["n"] = ns[0]
    if any(v < 0 for v in ns):
        raise ConfigError("--n: photon numbers must be nonnegative")
    if name in ("noon", "twin_fock", "arcsine") and ns[0] < 1:
        raise ConfigError(f"--n: the {name} family needs N >= 1")
    if not 0.0 < args.tail_eps < 1.0:
        raise ConfigError("--tail-eps: must lie in (0, 1)")
    return StateFamily(name, **kwargs)


def _state_rows(state: TwoModeState) -> list[tuple]:
    return [(na, nb, c.real, c.imag, abs(c) ** 2) for (na, nb), c in sorted(state.items())]


def cmd_state(args: argparse.Namespace) -> str:
    family = family_from_args(args)
    state = family.input_state()
    header = {**family.describe(), "norm": state.norm, "truncation_loss": float(state.truncation_loss)}
    return render(("n_a", "n_b", "re", "im", "probability"), _state_rows(state), args.format, header)


def _default_observable(family: StateFamily) -> str:
    return "parity_b" if family.name in ("noon", "twin_fock", "arcsine") else "j"


def _config_from_args(args: argparse.Namespace, family: StateFamily) -> MziConfig:
    base = family.default_config()
    try:
        return MziConfig(args.bs1 or base.bs1, args.bs2 or base.bs2)
    except ValueError as exc:
        raise ConfigError(f"--bs1/--bs2: {exc}") from None


def cmd_signal(args: argparse.Namespace) -> str:
    family = family_from_args(args)
    observable = args.observable or _default_observable(family)
    if observable not in detection.OBSERVABLES:
        raise ConfigError(f"--observable: unknown {observable!r}; choose from {', '.join(detection.OBSERVABLES)}")
    if args.steps < 2:
        raise ConfigError("--steps: a sweep needs at least 2 points")
    if not args.phi_max > args.phi_min:
        raise ConfigError("--phi-max must exceed --phi-min")
    grid = np.linspace(args.phi_min, args.phi_max, args.steps)
    table = sweep_signal(family, observable, grid, _config_from_args(args, family))
    if args.format == "json":
        return render(table.columns, table.rows, "json", table.metadata)
    return render(table.columns, table.rows, "csv")


def cmd_uncertainty(args: argparse.Namespace) -> str:
    ns = list(range(1, 21)) if args.n is None else list(args.n)
    if not ns:
        raise ConfigError("--n: the photon-number list is empty")
    if any(n < 1 for n in ns):
        raise ConfigError("--n: twin-Fock photon numbers must be positive")
    phis = DEFAULT_UNCERTAINTY_PHIS if not args.phi else tuple(args.phi)
    if any(p < 0 for p in phis):
        raise ConfigError("--phi: phases must be nonnegative")
    if args.step is not None and args.step <= 0:
        raise ConfigError("--step: must be positive")
    columns = ("phi", "two_n", "delta_phi", "sql", "hl", "diverged")
    rows = []
    for phi in phis:
        table = sweep_uncertainty(phi, ns, args.step)
        rows.extend((phi, *row) for row in table.rows)
    header = {"family": "twin_fock", "observable": "parity_b"} if args.format == "json" else None
    return render(columns, rows, args.format, header)


def cmd_joint(args: argparse.Namespace) -> str:
    family = family_from_args(args)
    joint = detection.joint_distribution(family.input_state())
    total = joint.total
    if abs(total - 1.0) > 1e-10:
        raise SimulationError(f"joint distribution sums to {total!r}")
    rows = [(na, nb, p) for (na, nb), p in joint.probabilities.items()]
    header = family.describe() if args.format == "json" else None
    return render(("n_a", "n_b", "probability"), rows, args.format, header)


def cmd_verify(args: argparse.Namespace) -> tuple[str, int]:
    results = verification.run_all()
    lines = [r.line() for r in results]
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    return "\n".join(lines) + "\n", EXIT_OK if failed == 0 else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("--family", required=True, help=f"one of: {', '.join(FAMILIES)}")
    fam.add_argument("--n", type=int, nargs="*", help="photon number(s); two counts for --family number")
    fam.add_argument("--alpha", default="1", help="coherent amplitude, complex allowed (e.g. 1+2j)")
    fam.add_argument("--phi-n", type=float, default=None, help="NOON manufacturing phase")
    fam.add_argument("--theta", type=float, default=0.0, help="entangled coherent branch rotation")
    fam.add_argument("--rel-phase", type=float, default=0.0, help="entangled coherent relative phase")
    fam.add_argument("--tail-eps", type=float, default=DEFAULT_TAIL_EPSILON)

    parser = argparse.ArgumentParser(prog="parity-metrology", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("state", parents=[common, fam], help="dump state amplitudes")

    sig = sub.add_parser("signal", parents=[common, fam], help="signal versus phase")
    sig.add_argument("--observable", choices=detection.OBSERVABLES)
    sig.add_argument("--phi-min", type=float, default=0.0)
    sig.add_argument("--phi-max", type=float, default=2 * math.pi)
    sig.add_argument("--steps", type=int, default=201)
    sig.add_argument("--bs1")
    sig.add_argument("--bs2")

    unc = sub.add_parser("uncertainty", parents=[common], help="twin-Fock phase uncertainty versus 2N")
    unc.add_argument("--n", type=int, nargs="*", help="twin-Fock photon numbers (default 1..20)")
    unc.add_argument("--phi", type=float, nargs="*", help="operating phases (default 0.0001 0.05)")
    unc.add_argument("--step", type=float, default=None, help="finite-difference step")

    sub.add_parser("joint", parents=[common, fam], help="joint photon-number distribution")
    sub.add_parser("verify", parents=[common], help="run closed-form checks")
    return parser


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            text, code = cmd_verify(args)
            _write(text, args.out)
            return code
        handler = {"state": cmd_state, "signal": cmd_signal, "uncertainty": cmd_uncertainty, "joint": cmd_joint}
        _write(handler[args.command](args), args.out)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SimulationError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
