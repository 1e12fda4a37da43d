"""Command line front end.

Subcommands: generate (write an instance file), verify (classify an
instance or a raw triple, exit 0 on pass), rank (binary ranks with
decompositions), h1 (span report for a point set), suite (batch
generate-and-verify over the standard grid).

All I/O is JSON with rationals as strings; outputs are byte-reproducible
from the command line and the input files.  Errors leave as machine
readable JSON on stderr with a nonzero exit status.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .binary import BinaryForm, complex_rank, real_rank
from .factory import CASE_A, CASE_B, CASE_C, Instance, generate_instance
from .forms import HomogeneousForm
from .points import PointSet
from .spans import h1_ideal
from .verifier import classify, classify_triple


def _dump(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(payload: dict, out_path: str | None) -> None:
    text = _dump(payload)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _thread_cap() -> int:
    raw = os.environ.get("WARINGLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"WARINGLAB_THREADS must be an integer, got {raw!r}")


def _parse_overrides(text: str | None) -> tuple[int | None, int | None]:
    if not text:
        return None, None
    obj = json.loads(text)
    if not isinstance(obj, dict) or not set(obj) <= {"line", "conic"}:
        raise ValueError(
            'threshold overrides must be a JSON object with keys in '
            '{"line", "conic"}')
    line = obj.get("line")
    conic = obj.get("conic")
    return (None if line is None else int(line),
            None if conic is None else int(conic))


def cmd_generate(args: argparse.Namespace) -> int:
    inst = generate_instance(args.case, args.d, args.m, args.seed)
    _emit(inst.to_json(), args.out)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    obj = _load(args.input)
    lt, ct = _parse_overrides(args.threshold_overrides)
    if "case" in obj:
        inst = Instance.from_json(obj)
        report = classify(inst, line_threshold=lt, conic_threshold=ct)
        seed = inst.seed
    else:
        form = HomogeneousForm.from_json(obj["P"])
        s_c = PointSet.from_json(obj["S_C"])
        s_r = PointSet.from_json(obj["S_R"])
        d = int(obj["d"])
        m = int(obj["m"])
        report = classify_triple(form, s_c, s_r, d, m, mode="raw",
                                 line_threshold=lt, conic_threshold=ct)
        seed = obj.get("seed")
    payload = report.to_json()
    payload["seed"] = seed
    _emit(payload, args.out)
    return 0 if report.overall_pass else 1


def cmd_rank(args: argparse.Namespace) -> int:
    form = BinaryForm.from_json(_load(args.input))
    rc, dec_c = complex_rank(form)
    payload: dict = {
        "input": form.to_json(),
        "complex": {"rank": rc, "decomposition": dec_c.to_json()},
    }
    if form.is_real:
        rr, dec_r = real_rank(form)
        payload["real"] = {"rank": rr, "decomposition": dec_r.to_json()}
    else:
        payload["real"] = None
        payload["note"] = "real rank is defined for real forms only"
    payload["seed"] = None
    _emit(payload, args.out)
    return 0


def cmd_h1(args: argparse.Namespace) -> int:
    s = PointSet.from_json(_load(args.input))
    report = h1_ideal(s, args.d)
    payload = report.to_json()
    payload["d"] = args.d
    payload["seed"] = None
    _emit(payload, args.out)
    return 0


def _suite_grid() -> list[tuple[str, int, int]]:
    cells = []
    for d in (3, 4, 5, 6):
        for m in (2, 3, 4):
            cells.append((CASE_A, d, m))
            cells.append((CASE_B, d, m))
    for d in (5, 6):
        for m in (3, 4):
            cells.append((CASE_C, d, m))
    return cells


def _suite_cell(cell: tuple[str, int, int], seed: int) -> dict:
    case, d, m = cell
    inst = generate_instance(case, d, m, seed)
    report = classify(inst)
    return {
        "case": case, "d": d, "m": m, "seed": seed,
        "overall_pass": report.overall_pass,
        "label_match": bool(report.label_match),
        "headline": report.headline,
    }


def cmd_suite(args: argparse.Namespace) -> int:
    cells = _suite_grid()
    cap = _thread_cap()
    if cap > 1:
        with ThreadPoolExecutor(max_workers=cap) as pool:
            rows = list(pool.map(lambda c: _suite_cell(c, args.seed), cells))
    else:
        rows = [_suite_cell(c, args.seed) for c in cells]
    failures = [r for r in rows if not (r["overall_pass"]
                                        and r["label_match"])]
    payload = {
        "seed": args.seed,
        "total": len(rows),
        "passed": len(rows) - len(failures),
        "rows": rows,
    }
    _emit(payload, args.out)
    return 0 if not failures else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="waringlab",
        description="Exact real versus complex Waring rank laboratory.")
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("generate", help="write one instance file")
    gen.add_argument("--case", required=True, choices=(CASE_A, CASE_B,
                                                       CASE_C))
    gen.add_argument("--d", required=True, type=int)
    gen.add_argument("--m", required=True, type=int)
    gen.add_argument("--seed", required=True, type=int)
    gen.add_argument("--out", default=None)
    gen.set_defaults(func=cmd_generate)

    ver = subs.add_parser("verify", help="classify an instance or triple")
    ver.add_argument("input")
    ver.add_argument("--out", default=None)
    ver.add_argument("--threshold-overrides", default=None,
                     help='expert: JSON like {"line": 5, "conic": 8}')
    ver.set_defaults(func=cmd_verify)

    rnk = subs.add_parser("rank", help="binary form ranks over C and R")
    rnk.add_argument("input")
    rnk.add_argument("--out", default=None)
    rnk.set_defaults(func=cmd_rank)

    h1p = subs.add_parser("h1", help="span report for a point set")
    h1p.add_argument("input")
    h1p.add_argument("--d", required=True, type=int)
    h1p.add_argument("--out", default=None)
    h1p.set_defaults(func=cmd_h1)

    ste = subs.add_parser("suite", help="generate and verify the grid")
    ste.add_argument("--seed", type=int, default=0)
    ste.add_argument("--out", default=None)
    ste.set_defaults(func=cmd_suite)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, KeyError, TypeError, ArithmeticError,
            json.JSONDecodeError) as err:
        sys.stderr.write(_dump({
            "error": type(err).__name__,
            "message": str(err),
        }))
        return 2


if __name__ == "__main__":
    sys.exit(main())
