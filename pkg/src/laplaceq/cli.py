"""Command-line front end: ``laplaceq <subcommand> [options]``.

Exit codes: 0 success, 1 domain error (bad parameter, unparsable input,
unknown flag), 2 numerical failure.  Results go to stdout (or ``--out``)
as JSON with sorted keys, or CSV with ``--csv``; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from ._io import dumps, rows_to_csv
from .errors import DegenerateInput, InvalidParameter, LaplaceqError, NumericalFailure, ParseError
from .explore import test_conjecture_1, test_conjecture_2
from .graphs import FAMILIES, density_matrix, family_graph, parse_graph
from .locc import locc_verdict_pair
from .spectra import (
    CLOSED_FORM_FAMILIES,
    closed_form_spectrum,
    entropy,
    numeric_spectrum,
    rationalize,
)
from .verify import THEOREMS, reproduce_counterexample, verify_theorem
from .weighted import admissible_phase_set, check_triangle_condition, grid_scan, parse_phases

SUBCOMMANDS = ("spectrum", "entropy", "locc", "verify", "counterexample", "weights", "explore")


class UsageError(LaplaceqError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_input(p):
    p.add_argument("--graph", metavar="FILE", help="graph JSON file ('-' for stdin)")
    p.add_argument("--family", metavar="NAME", help=f"family name ({', '.join(FAMILIES)}) or NAME:N[:M]")
    p.add_argument("--n", type=int, help="vertex count for --family")
    p.add_argument("--m", type=int, help="second family parameter (star_mlike m, star_plus_path k)")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="closed-form rational spectrum")
    mode.add_argument("--numeric", action="store_true", help="Jacobi eigensolver spectrum")


def _add_output(p):
    p.add_argument("--csv", action="store_true", help="emit CSV instead of JSON")
    p.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="laplaceq", description="Graph Laplacian density matrices: spectra, entropy, LOCC.")
    parser.add_argument("--version", action="version", version=f"laplaceq {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name in ("spectrum", "entropy"):
        p = sub.add_parser(name)
        _add_input(p)
        _add_output(p)

    p = sub.add_parser("locc", help="both-direction majorization verdict")
    p.add_argument("--a", required=True, metavar="SPEC", help="NAME:N[:M] or graph JSON file")
    p.add_argument("--b", required=True, metavar="SPEC", help="NAME:N[:M] or graph JSON file")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--numeric", action="store_true")
    _add_output(p)

    p = sub.add_parser("verify", help="theorem sweeps")
    p.add_argument("--theorem", choices=sorted(THEOREMS), help="default: all")
    p.add_argument("--n-max", type=int, default=50)
    p.add_argument("--n-min", type=int)
    _add_output(p)

    p = sub.add_parser("counterexample", help="seven-vertex path/wheel example")
    _add_output(p)

    p = sub.add_parser("weights", help="triangle phase condition")
    p.add_argument("--phases", metavar="W1,W2,W3", help="radians or 'k/m pi' fractions")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--grid-steps", type=int, default=360)
    _add_output(p)

    p = sub.add_parser("explore", help="conjecture exploration")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-edges", type=int)
    p.add_argument("--cycle-only", action="store_true")
    p.add_argument("--conjecture", type=int, choices=(1, 2), help="default: both")
    _add_output(p)
    return parser


# -- input resolution -----------------------------------------------------------------


def _read_graph(path: str, flag: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{flag}: cannot read {path!r}: {exc.strerror}") from None
    try:
        return parse_graph(text)
    except ParseError as exc:
        raise ParseError(f"{flag}: {exc}") from None


def _parse_family_spec(text: str, flag: str):
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise InvalidParameter(f"{flag}: expected NAME:N[:M], got {text!r}")
    try:
        nums = [int(x) for x in parts[1:]]
    except ValueError:
        raise InvalidParameter(f"{flag}: non-integer parameter in {text!r}") from None
    return parts[0], nums[0], (nums[1] if len(nums) > 1 else None)


def _family_from_args(args):
    if ":" in args.family:
        if args.n is not None or args.m is not None:
            raise UsageError("--family NAME:N[:M] cannot be combined with --n/--m")
        return _parse_family_spec(args.family, "--family")
    if args.n is None:
        raise UsageError("--family requires --n")
    return args.family, args.n, args.m


def _source(args):
    """Return ('family', (name, n, m)) or ('graph', Graph)."""
    if (args.graph is None) == (args.family is None):
        raise UsageError("exactly one of --graph or --family is required")
    if args.graph is not None:
        if args.n is not None or args.m is not None:
            raise UsageError("--n/--m only apply to --family")
        return "graph", _read_graph(args.graph, "--graph")
    return "family", _family_from_args(args)


def _spectrum_for(kind, value, exact: bool, numeric: bool, flag: str):
    if kind == "family":
        name, n, m = value
        try:
            if not numeric and name in CLOSED_FORM_FAMILIES:
                family_graph(name, n, m)  # same structural checks as the numeric path
                return closed_form_spectrum(name, n, m)
            if exact:
                raise InvalidParameter(f"no closed form for family {name!r}; use --numeric")
            return numeric_spectrum(density_matrix(family_graph(name, n, m)))
        except InvalidParameter as exc:
            raise InvalidParameter(f"{flag}: {exc}") from None
    try:
        rho = density_matrix(value)
    except DegenerateInput as exc:
        raise DegenerateInput(f"{flag}: $.edges: {exc}") from None
    s = numeric_spectrum(rho)
    if exact:
        try:
            return rationalize(s)
        except LaplaceqError as exc:
            raise InvalidParameter(f"{flag}: {exc}") from None
    return s


def _locc_operand(text: str, flag: str):
    head = text.split(":", 1)[0]
    if ":" in text and head in FAMILIES:
        return "family", _parse_family_spec(text, flag)
    return "graph", _read_graph(text, flag)


# -- subcommands ----------------------------------------------------------------------


def _cmd_spectrum(args):
    kind, value = _source(args)
    flag = "--graph" if kind == "graph" else "--family"
    s = _spectrum_for(kind, value, args.exact, args.numeric, flag)
    if args.csv:
        doc = s.to_dict()
        return rows_to_csv(doc["entries"], ["value", "multiplicity"])
    return dumps(s.to_dict())


def _cmd_entropy(args):
    kind, value = _source(args)
    flag = "--graph" if kind == "graph" else "--family"
    s = _spectrum_for(kind, value, args.exact, args.numeric, flag)
    doc = entropy(s).to_dict()
    if args.csv:
        return rows_to_csv([doc], ["bits"])
    return dumps(doc)


def _cmd_locc(args):
    sa = _spectrum_for(*_locc_operand(args.a, "--a"), args.exact, args.numeric, "--a")
    sb = _spectrum_for(*_locc_operand(args.b, "--b"), args.exact, args.numeric, "--b")
    doc = locc_verdict_pair(sa, sb).to_dict()
    if args.csv:
        row = {"a_to_b": doc["a_to_b"], "b_to_a": doc["b_to_a"],
               "first_failing_k_a_to_b": doc["first_failing_k"]["a_to_b"],
               "first_failing_k_b_to_a": doc["first_failing_k"]["b_to_a"]}
        return rows_to_csv([row], list(row))
    return dumps(doc)


def _reports_output(reports, args):
    if args.csv:
        keys = ["theorem"] + sorted({k for r in reports for rec in r.records for k in rec.params})
        rows = [row for r in reports for row in r.csv_rows()]
        return rows_to_csv(rows, keys + ["result", "claim", "witness"])
    return dumps({"reports": [r.to_dict() for r in reports]})


def _cmd_verify(args):
    theorems = [args.theorem] if args.theorem else sorted(THEOREMS)
    reports = []
    for t in theorems:
        try:
            reports.extend(verify_theorem(t, n_max=args.n_max, n_min=args.n_min))
        except InvalidParameter as exc:
            raise InvalidParameter(f"--n-max/--n-min: {exc}") from None
    return _reports_output(reports, args)


def _cmd_counterexample(args):
    return _reports_output([reproduce_counterexample()], args)


def _cmd_weights(args):
    if args.tol <= 0:
        raise InvalidParameter("--tol must be positive")
    if args.phases is not None:
        try:
            phases = parse_phases(args.phases)
        except ParseError as exc:
            raise ParseError(f"--phases: {exc}") from None
        res = check_triangle_condition(phases, args.tol)
        doc = {"phases": list(phases.as_tuple()), **res.to_dict()}
        if args.csv:
            row = {"w1": phases.w1, "w2": phases.w2, "w3": phases.w3, "satisfied": res.satisfied,
                   "r1": res.residuals[0], "r2": res.residuals[1], "r3": res.residuals[2]}
            return rows_to_csv([row], list(row))
        return dumps(doc)
    if args.grid_steps < 1:
        raise InvalidParameter("--grid-steps must be >= 1")
    admissible = [list(p.as_tuple()) for p in admissible_phase_set(args.tol)]
    hits = grid_scan(args.grid_steps, args.tol)
    half = args.grid_steps / 2
    outside = [h for h in hits.tolist() if any(i not in (0, half) for i in h)]
    doc = {"admissible": admissible, "grid_steps": args.grid_steps,
           "grid_solutions": hits.tolist(), "grid_solutions_outside_0_pi": outside}
    if args.csv:
        rows = [{"w1": a, "w2": b, "w3": c} for a, b, c in admissible]
        return rows_to_csv(rows, ["w1", "w2", "w3"])
    return dumps(doc)


def _cmd_explore(args):
    which = [args.conjecture] if args.conjecture else [1, 2]
    reports = []
    for c in which:
        fn = test_conjecture_1 if c == 1 else test_conjecture_2
        try:
            reports.append(fn(args.n, args.max_edges, args.cycle_only))
        except InvalidParameter as exc:
            raise InvalidParameter(f"--n/--max-edges: {exc}") from None
    if args.csv:
        rows = []
        for r in reports:
            for rec in r.records:
                rows.append({"conjecture": r.conjecture, "n": r.n, "reading": r.reading,
                             **{k: v for k, v in rec.items() if k != "first_failing_k"}})
        keys = []
        for row in rows:
            keys.extend(k for k in row if k not in keys)
        return rows_to_csv(rows, keys)
    return dumps({"reports": [r.to_dict() for r in reports]})


_HANDLERS = {
    "spectrum": _cmd_spectrum,
    "entropy": _cmd_entropy,
    "locc": _cmd_locc,
    "verify": _cmd_verify,
    "counterexample": _cmd_counterexample,
    "weights": _cmd_weights,
    "explore": _cmd_explore,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        text = _HANDLERS[args.command](args)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except NumericalFailure as exc:
        print(f"laplaceq: numerical failure: {exc}", file=stderr)
        return 2
    except LaplaceqError as exc:
        print(f"laplaceq: error: {exc}", file=stderr)
        return 1
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "out", None):
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"laplaceq: error: --out: cannot write {args.out!r}: {exc.strerror}", file=stderr)
            return 1
    else:
        stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
