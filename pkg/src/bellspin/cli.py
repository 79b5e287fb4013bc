"""Command-line front end.

Every subcommand builds one JSON-compatible document; ``--format structured``
prints it as JSON, ``--format text`` renders the same document with 9
significant digits. Exit codes: 0 success, 2 usage or validation error, 3 an
internal consistency check failed.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .bipartite import (ChshSettings, chsh_expectation, chsh_operator_norm, singlet,
                        tsirelson_multistart)
from .clifford import Direction
from .errors import DomainError, InvariantError
from .lhv import (STRATEGIES, Behavior, ConvexDecomposition, CorrelationVector, facet_check,
                  lp_membership, lp_membership_behavior, non_embeddability_certificate)
from .montecarlo import simulate_lhv, simulate_quantum

SCHEMA_VERSION = 1
TEXT_DIGITS = 9


def _floats(text: str, count: int, what: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise DomainError(f"{what}: expected {count} comma-separated numbers, got {text!r}") from None
    if len(values) != count:
        raise DomainError(f"{what}: expected {count} comma-separated numbers, got {len(values)}")
    return values


def settings_from_args(args) -> ChshSettings:
    """Directions from ``--angles`` or ``--a0/--a1/--b0/--b1``; unset ones default to the optimal settings."""
    given = [getattr(args, k) for k in ("a0", "a1", "b0", "b1")]
    if args.angles is not None:
        if any(g is not None for g in given):
            raise DomainError("use either --angles or --a0/--a1/--b0/--b1, not both")
        return ChshSettings.from_angles(_floats(args.angles, 8, "--angles"))
    default = ChshSettings.optimal().directions
    dirs = [Direction.from_vector(_floats(g, 3, f"--{k}")) if g is not None else d
            for g, d, k in zip(given, default, ("a0", "a1", "b0", "b1"))]
    return ChshSettings(*dirs)


def _settings_doc(s: ChshSettings) -> dict:
    return {k: [d.x, d.y, d.z] for k, d in zip(("a0", "a1", "b0", "b1"), s.directions)}


def _strategy_label(strategy) -> str:
    return "".join("+" if v > 0 else "-" for v in strategy)


def _decomposition_doc(d: ConvexDecomposition | None) -> list | None:
    if d is None:
        return None
    return [{"strategy": _strategy_label(s), "weight": w} for s, w in d.support().items()]


def _facet_doc(facet) -> dict | None:
    if facet is None:
        return None
    return {"index": facet.index, "signs": list(facet.signs), "bound": facet.bound}


def cmd_quantum(args) -> dict:
    s = settings_from_args(args)
    corr = CorrelationVector.from_state(singlet(), s).as_array()
    return {
        "command": "quantum",
        "settings": _settings_doc(s),
        "correlations": [[float(corr[0]), float(corr[1])], [float(corr[2]), float(corr[3])]],
        "chsh": chsh_expectation(singlet(), s),
        "operator_norm": chsh_operator_norm(s, seed=args.seed),
    }


def cmd_certificate(args) -> dict:
    s = settings_from_args(args)
    v = non_embeddability_certificate(s)
    cert = v.certificate
    return {
        "command": "certificate",
        "settings": _settings_doc(s),
        "correlations": [float(x) for x in v.correlations.as_array()],
        "verdict": v.verdict,
        "facet": None if cert is None else {"index": cert.facet_index, "signs": list(cert.signs),
                                            "bound": cert.classical_bound, "value": cert.value},
        "gap": None if cert is None else cert.gap,
        "on_boundary": v.on_boundary,
        "decomposition": _decomposition_doc(v.decomposition),
    }


def cmd_tsirelson(args) -> dict:
    best, runs = tsirelson_multistart(args.restarts, seed=args.seed, workers=args.workers)
    return {
        "command": "tsirelson",
        "restarts": args.restarts,
        "seed": args.seed,
        "best_value": best.value,
        "best_start": best.start_index,
        "status": best.status,
        "settings": _settings_doc(best.settings),
        "values": [r.value for r in runs],
        "max_seen": max(r.max_seen for r in runs),
        "tsirelson_bound": 2 * math.sqrt(2),
    }


def cmd_lhv_check(args) -> dict:
    values = args.values
    if len(values) == 4:
        corr = CorrelationVector.of(values)
        res = lp_membership(corr)
        check = facet_check(corr)
        doc = {"input": "correlations", "correlations": [float(x) for x in corr.as_array()]}
    elif len(values) == 16:
        behavior = Behavior(values)
        res = lp_membership_behavior(behavior)
        check = facet_check(behavior.correlations())
        doc = {"input": "behavior", "correlations": [float(x) for x in behavior.correlations().as_array()]}
    else:
        raise DomainError(f"lhv-check takes 4 correlations or 16 probabilities, got {len(values)} numbers")
    if res.status == "stalled":
        raise InvariantError("LP stalled")
    if res.feasible != check.satisfied and not check.on_boundary:
        raise InvariantError("facet check and LP disagree")
    doc.update({
        "command": "lhv-check",
        "status": res.status,
        "max_facet_value": check.value,
        "on_boundary": check.on_boundary,
        "facet": _facet_doc(res.facet),
        "decomposition": _decomposition_doc(res.decomposition),
    })
    return doc


def cmd_simulate(args) -> dict:
    if args.model == "quantum":
        s = settings_from_args(args)
        report = simulate_quantum(s, args.trials, args.seed)
        extra = {"settings": _settings_doc(s)}
    else:
        w = np.full(16, 1 / 16) if args.weights is None else _floats(args.weights, 16, "--weights")
        d = ConvexDecomposition(w)
        report = simulate_lhv(d, args.trials, args.seed)
        extra = {"decomposition": _decomposition_doc(d)}
    return {
        "command": "simulate",
        "model": report.model,
        "seed": report.seed,
        "trials": report.n_trials,
        **extra,
        "context_counts": report.counts.tolist(),
        "correlations": report.correlations.tolist(),
        "std_errors": report.std_errors.tolist(),
        "chsh": report.chsh,
        "chsh_std_error": report.chsh_std_error,
    }


def render_structured(doc: dict) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **doc}, indent=2)


def parse_structured(text: str) -> dict:
    doc = json.loads(text)
    doc.pop("schema_version", None)
    return doc


def _fmt(value) -> str:
    if isinstance(value, bool) or value is None:
        return str(value).lower() if value is not None else "-"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, f".{TEXT_DIGITS}g")
    return str(value)


def render_text(doc: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key, value in doc.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_text(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for item in value:
                lines.append(pad + "  - " + ", ".join(f"{k}={_fmt(v)}" for k, v in item.items()))
        elif isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{pad}{key}:")
            for row in value:
                lines.append(pad + "  " + "  ".join(f"{_fmt(v):>16}" for v in row))
        elif isinstance(value, list):
            lines.append(f"{pad}{key}: [" + ", ".join(_fmt(v) for v in value) + "]")
        else:
            lines.append(f"{pad}{key}: {_fmt(value)}")
    return "\n".join(lines)


def _add_settings_flags(p):
    p.add_argument("--a0", metavar="X,Y,Z")
    p.add_argument("--a1", metavar="X,Y,Z")
    p.add_argument("--b0", metavar="X,Y,Z")
    p.add_argument("--b1", metavar="X,Y,Z")
    p.add_argument("--angles", metavar="T0,P0,...,T3,P3",
                   help="polar/azimuthal angle pairs for a0, a1, b0, b1")


def _add_output_flags(p):
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bellspin", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("quantum", help="singlet correlation table, CHSH value, operator norm")
    _add_settings_flags(p)
    p.add_argument("--seed", type=int, default=0)
    _add_output_flags(p)
    p.set_defaults(func=cmd_quantum)

    p = sub.add_parser("certificate", help="local-model test of the singlet correlations")
    _add_settings_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("tsirelson", help="multi-start maximization of the CHSH value")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=None)
    _add_output_flags(p)
    p.set_defaults(func=cmd_tsirelson)

    p = sub.add_parser("lhv-check", help="local polytope membership of 4 correlations or 16 probabilities")
    p.add_argument("values", type=float, nargs="+")
    _add_output_flags(p)
    p.set_defaults(func=cmd_lhv_check)

    p = sub.add_parser("simulate", help="Monte Carlo CHSH experiment")
    p.add_argument("--model", choices=("quantum", "lhv"), default="quantum")
    _add_settings_flags(p)
    p.add_argument("--weights", metavar="W1,...,W16", help="LHV strategy weights (default uniform)")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    _add_output_flags(p)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = args.func(args)
    except DomainError as exc:
        print(f"bellspin {args.command}: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        print(f"bellspin {args.command}: internal check failed: {exc}", file=sys.stderr)
        return 3
    text = render_structured(doc) if args.format == "structured" else render_text(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
