"""``young`` command-line front end.

    young <command> [STATE_FILE] [--out FILE] [--grid N] [--refine N]
          [--samples N] [--mode K] [--phases a,b,...] [--modes L]
          [--photons N] [--starts N] [--seed S] [--tolerance T]

Exit status: 0 ok, 1 invalid input, 2 verify-paper failure, 3 size limit hit.
"""

from __future__ import annotations

import argparse
import ast
import json
import math
import operator
import os
import re
import sys
from typing import Sequence, TextIO

from . import coherence, interference, optimize, reference_cases
from .fock import LimitExceeded, PhotonState, StateError, as_phases, parse_state

EXIT_OK, EXIT_INVALID, EXIT_VERIFY, EXIT_LIMIT = 0, 1, 2, 3
COMMANDS = ("coherence", "classify", "fringe", "visibility", "optimize", "verify-paper")
SEED_ENV = "YOUNG_SEED"


class UsageError(Exception):
    """Bad input on the command line; ``show_usage`` for grammar errors."""

    def __init__(self, message, show_usage=False):
        super().__init__(message)
        self.show_usage = show_usage


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message, show_usage=True)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="young", description="Multi-photon multi-path interference toolkit.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("state_file", nargs="?", metavar="STATE_FILE")
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--grid", type=int, default=64, metavar="N", help="torus grid points per phase")
    p.add_argument("--refine", type=int, default=200, metavar="N", help="local refinement iterations")
    p.add_argument("--samples", type=int, default=360, metavar="N")
    p.add_argument("--mode", type=int, default=0, metavar="K")
    p.add_argument("--phases", metavar="a,b,...", help="radians; 'pi' arithmetic allowed, e.g. 2pi/3")
    p.add_argument("--modes", type=int, metavar="L")
    p.add_argument("--photons", type=int, metavar="N")
    p.add_argument("--starts", type=int, default=16, metavar="N")
    p.add_argument("--seed", type=int, metavar="S")
    p.add_argument("--tolerance", type=float, default=1e-6, metavar="T")
    return p


_OPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.USub: operator.neg,
    ast.UAdd: operator.pos,
}


def _eval_node(node) -> float:
    if isinstance(node, ast.Expression):
        return _eval_node(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return float(node.value)
    if isinstance(node, ast.Name) and node.id == "pi":
        return math.pi
    if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
        return _OPS[type(node.op)](_eval_node(node.left), _eval_node(node.right))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _OPS:
        return _OPS[type(node.op)](_eval_node(node.operand))
    raise ValueError("unsupported token")


def parse_angle(text: str) -> float:
    """Evaluate a radian expression such as ``-pi``, ``2pi/3`` or ``0.5*pi``."""
    src = re.sub(r"(\d|\))\s*(pi)\b", r"\1*\2", text.strip().replace("π", "pi"))
    try:
        value = _eval_node(ast.parse(src, mode="eval"))
    except (SyntaxError, ValueError, ZeroDivisionError):
        raise UsageError(f"cannot read phase {text!r}") from None
    if not math.isfinite(value):
        raise UsageError(f"phase {text!r} is not finite")
    return value


def parse_phases(text: str, modes: int):
    values = [parse_angle(part) for part in text.split(",")]
    if len(values) != modes:
        raise UsageError(f"--phases has {len(values)} entries, the state has {modes} modes")
    return as_phases(values)


def _seed(args) -> int:
    if args.seed is not None:
        seed = args.seed
    else:
        raw = os.environ.get(SEED_ENV, "0")
        try:
            seed = int(raw)
        except ValueError:
            raise UsageError(f"{SEED_ENV}={raw!r} is not an integer") from None
    if seed < 0:
        raise UsageError("seed must be non-negative")
    return seed


def _load(args) -> PhotonState:
    if not args.state_file:
        raise UsageError(f"{args.command} needs a STATE_FILE")
    try:
        with open(args.state_file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.state_file}: {exc.strerror}") from None
    return parse_state(text)


def _search(args) -> optimize.TorusSearchConfig:
    if args.refine < 0:
        raise UsageError("--refine must be >= 0")
    return optimize.TorusSearchConfig(
        grid_points_per_dim=args.grid, refine_iterations=args.refine, seed=_seed(args)
    )


def _json(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def cmd_coherence(args) -> tuple[str, int]:
    state = _load(args)
    report = coherence.decompose(state)
    doc = {"l1_coherence": coherence.l1_coherence(state), **report.to_dict(state)}
    return _json(doc), EXIT_OK


def cmd_classify(args) -> tuple[str, int]:
    if args.state_file:
        state = _load(args)
    elif args.modes is not None and args.photons is not None:
        state = reference_cases.full_basis_state(args.modes, args.photons)
    else:
        raise UsageError("classify needs a STATE_FILE or both --modes and --photons")
    report = coherence.decompose(state)
    occ = state.occupations
    pairs = [
        {"occ_a": list(occ[e.index_a]), "occ_b": list(occ[e.index_b]), "kind": e.kind.value}
        for e in report.entries
    ]
    doc = {
        "modes": state.modes,
        "photons": state.photons,
        "pairs": len(pairs),
        "local": report.local_count,
        "collective": report.collective_count,
        "state_class": report.state_class.value,
        "entries": pairs,
    }
    return _json(doc), EXIT_OK


def cmd_fringe(args) -> tuple[str, int]:
    state = _load(args)
    base = parse_phases(args.phases, state.modes) if args.phases else None
    curve = interference.fringe_curve(state, args.mode, args.samples, base)
    return curve.to_csv(), EXIT_OK


def cmd_visibility(args) -> tuple[str, int]:
    state = _load(args)
    result = interference.visibility(state, _search(args))
    doc = result.to_dict()
    doc["l1_coherence"] = coherence.l1_coherence(state)
    if state.modes == 2 and interference.is_phase_matched(state):
        doc["analytic_visibility"] = interference.two_path_visibility_analytic(
            interference.two_path_moduli(state)
        )
    if args.phases:
        alpha = parse_phases(args.phases, state.modes)
        doc["phases"] = [interference.round_phase(a) for a in alpha]
        doc["intensity"] = interference.intensity(state, alpha)
    return _json(doc), EXIT_OK


def cmd_optimize(args) -> tuple[str, int]:
    if args.modes is None or args.photons is None:
        raise UsageError("optimize needs --modes and --photons")
    if args.modes < 2 or args.photons < 1:
        raise UsageError("optimize needs --modes >= 2 and --photons >= 1")
    if args.starts < 0:
        raise UsageError("--starts must be >= 0")
    cfg = optimize.CoeffOptConfig(starts=args.starts, seed=_seed(args))
    best = optimize.maximize_visibility_coefficients(args.modes, args.photons, cfg, _search(args))
    return _json(best.to_dict()), EXIT_OK


def cmd_verify_paper(args) -> tuple[str, int]:
    if not args.tolerance > 0:
        raise UsageError("--tolerance must be positive")
    checks = reference_cases.run_checks(tolerance=args.tolerance, seed=_seed(args))
    lines = [c.line() for c in checks]
    failed = sum(not c.passed for c in checks)
    lines.append(f"{len(checks) - failed}/{len(checks)} passed")
    return "\n".join(lines) + "\n", EXIT_OK if failed == 0 else EXIT_VERIFY


HANDLERS = {
    "coherence": cmd_coherence,
    "classify": cmd_classify,
    "fringe": cmd_fringe,
    "visibility": cmd_visibility,
    "optimize": cmd_optimize,
    "verify-paper": cmd_verify_paper,
}


def _one_line(message) -> str:
    return " ".join(str(message).split())


def _glue_phase_values(argv: Sequence[str]) -> list[str]:
    # argparse takes "-pi,0" for an option, so bind it to --phases explicitly
    out, it = [], iter(argv)
    for token in it:
        if token == "--phases":
            value = next(it, None)
            out.append("--phases" if value is None else f"--phases={value}")
        else:
            out.append(token)
    return out


def run(argv: Sequence[str], stdout: TextIO, stderr: TextIO) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(_glue_phase_values(argv))
        text, status = HANDLERS[args.command](args)
    except UsageError as exc:
        if exc.show_usage:
            stderr.write(parser.format_usage())
        stderr.write(f"error: {_one_line(exc)}\n")
        return EXIT_INVALID
    except LimitExceeded as exc:
        stderr.write(f"error: {_one_line(exc)}\n")
        return EXIT_LIMIT
    except (StateError, ValueError, ArithmeticError) as exc:
        stderr.write(f"error: {_one_line(exc)}\n")
        return EXIT_INVALID

    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            stderr.write(f"error: cannot write {args.out}: {_one_line(exc.strerror)}\n")
            return EXIT_INVALID
    else:
        stdout.write(text)
    return status


def main(argv: Sequence[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv, sys.stdout, sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
