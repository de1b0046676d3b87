"""Command line entry point.

Exit codes: 0 success, 1 mathematical failure (Jacobi, filiform or fixture
mismatch), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .invariants import (
    BiPoly,
    central_series_term,
    hilbert_polynomial,
    hp0,
    invariants_adapted,
    is_adapted,
    is_filiform,
    is_model,
    support_Estar,
    theta_vector,
)
from .laws import EmptyVarietyError, build_law, jacobi_constraints
from .lawio import LawFileError, loads_json, parse_law, request_from_obj, serialize_law
from .lie import format_vector, is_lie, is_nilpotent, jacobi_defects, lower_central_series

EXIT_OK, EXIT_MATH, EXIT_USAGE = 0, 1, 2
REPRODUCE_IDS = ("4-5-8", "5-6-9", "5-7-10", "z2eq", "all")


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, export: str | None) -> None:
    if export:
        Path(export).write_text(text)
    else:
        sys.stdout.write(text)


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


# ---------------------------------------------------------------------------


def cmd_check(args) -> int:
    L = parse_law(_read(args.law), args.law)
    defects = jacobi_defects(L)
    lie = not defects
    filiform = lie and is_filiform(L)
    verdict = {"lie": lie, "filiform": filiform, "adapted": is_adapted(L)}
    if args.format == "json":
        doc = dict(verdict)
        doc["defects"] = [
            {"triple": list(t), "value": format_vector(v)} for t, v in sorted(defects.items())
        ]
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(", ".join(f"{k}: {_yn(v)}" for k, v in verdict.items()))
        for (i, j, k), vec in sorted(defects.items()):
            print(f"jacobi defect at ({i},{j},{k}): {format_vector(vec)}")
    return EXIT_OK if lie else EXIT_MATH


def _filiform_failure(L) -> str:
    if not is_lie(L):
        return "not a Lie algebra"
    if not is_nilpotent(L):
        return "not nilpotent"
    series = lower_central_series(L)
    for k in range(2, L.dim + 1):
        d = central_series_term(series, k).dim
        if d != L.dim - k:
            return f"dim C^{k} = {d}, expected {L.dim - k}"
    return "not filiform"


def invariants_document(L) -> dict:
    H = hilbert_polynomial(L)
    doc = {
        "dim": L.dim,
        "theta": list(theta_vector(L)),
        "hp": H.to_json_obj(),
        "hp2": (H - hp0(L.dim)).to_json_obj(),
        "Estar": sorted([k, l] for k, l in support_Estar(L)),
    }
    if not is_adapted(L):
        # z1 and z2 are read off an adapted basis
        doc["triple"] = None
    elif is_model(L):
        doc["model"] = True
    else:
        doc["triple"] = list(invariants_adapted(L).as_tuple())
    return doc


def cmd_invariants(args) -> int:
    L = parse_law(_read(args.law), args.law)
    if not is_filiform(L):
        print(f"error: {_filiform_failure(L)}", file=sys.stderr)
        return EXIT_MATH
    try:
        doc = invariants_document(L)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    if args.format == "json":
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.export)
        return EXIT_OK
    lines = [f"dim: {doc['dim']}"]
    if doc.get("model"):
        lines.append("model: yes")
    elif doc["triple"] is None:
        lines.append("triple: unavailable (basis not adapted)")
    else:
        lines.append(f"triple: {tuple(doc['triple'])}")
    lines.append(f"theta: {tuple(doc['theta'])}")
    lines.append(f"HP: {BiPoly.from_json_obj(doc['hp'])}")
    lines.append(f"HP2: {BiPoly.from_json_obj(doc['hp2'])}")
    lines.append("E*: " + " ".join(f"({k},{l})" for k, l in doc["Estar"]))
    _emit("\n".join(lines) + "\n", args.export)
    return EXIT_OK


def cmd_generate(args) -> int:
    obj = loads_json(_read(args.request), args.request)
    spec, values = request_from_obj(obj)
    law = build_law(spec, values)
    if args.constraints:
        if values.is_numeric():
            raise UsageError("--constraints needs at least one symbolic (\"sym\") parameter")
        try:
            cs = jacobi_constraints(law)
        except EmptyVarietyError as exc:
            print(f"error: {exc}; no parameter value gives a Lie algebra", file=sys.stderr)
            return EXIT_MATH
        _emit(cs.to_json() + "\n" if args.format == "json" else cs.to_text(), args.export)
        return EXIT_OK
    _emit(serialize_law(law.law), args.export)
    return EXIT_OK


def _run_case(case_id: str, seed: int, samples: int):
    if case_id == "z2eq":
        from .families import closed_form_sweep

        return closed_form_sweep(seed=seed, points=max(1, samples // 3))
    from .sporadic import reproduce

    return reproduce(case_id, seed=seed, samples=samples)


def cmd_reproduce(args) -> int:
    if args.samples < 1 or args.jobs < 1:
        raise UsageError("--samples and --jobs must be positive")
    if args.case not in REPRODUCE_IDS:
        raise UsageError(f"unknown case id {args.case!r}; choose from {', '.join(REPRODUCE_IDS)}")
    cases = ["4-5-8", "5-6-9", "5-7-10", "z2eq"] if args.case == "all" else [args.case]
    if args.jobs > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_run_case, cases, [args.seed] * len(cases), [args.samples] * len(cases)))
    else:
        reports = [_run_case(c, args.seed, args.samples) for c in cases]
    if args.format == "json":
        text = json.dumps([r.to_json_obj() for r in reports], indent=2, sort_keys=True) + "\n"
    else:
        text = "\n".join(r.to_table() for r in reports) + "\n"
    _emit(text, args.export)
    return EXIT_OK if all(r.status != "FAIL" for r in reports) else EXIT_MATH


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="table")
    common.add_argument("--export", metavar="PATH", help="write the main output to PATH")

    parser = _Parser(prog="filiform", description="Filiform Lie algebra invariants and families.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="Jacobi, filiform and adapted-basis checks")
    p.add_argument("law", help="law file (JSON) or - for stdin")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("invariants", parents=[common], help="triple, theta, HP, HP2 and E*")
    p.add_argument("law")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("generate", parents=[common], help="build a law from a family request")
    p.add_argument("request", help="request file (JSON) or - for stdin")
    p.add_argument("--constraints", action="store_true", help="emit the Jacobi constraint system instead")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("reproduce", parents=[common], help="rerun the stratified HP computations")
    p.add_argument("case", help=", ".join(REPRODUCE_IDS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (UsageError, LawFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
