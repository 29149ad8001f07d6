"""Command-line interface.

Artifacts (complex files, maps, certificates, listings) go to stdout or to
files and are byte-deterministic for fixed inputs and flags; the run
report (timings, digests, counters, verdict) is a single JSON line on
stderr.  Exit codes: 0 success/PASS, 1 FAIL, 2 usage or input error,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import textio
from .cells import classify_cell, enumerate_cells, factor_vector, is_q_cell
from .collapse import (
    collapse_hat,
    collapse_q,
    hat_finish_labels,
    hat_start_labels,
    q_finish_cells,
    replay,
)
from .complexes import barycentric
from .errors import BudgetExceeded, InputError, ParameterError
from .homology import homology
from .resolution import lift, resolve
from .towers import (
    check_family,
    example_tower,
    resolve_tower,
    skeleton_tower,
    surjectivize,
    trace_simplex,
)


class Budget:
    """Soft wall-clock budget checked at phase boundaries."""

    def __init__(self, ms: int | None):
        self.ms = ms
        self.t0 = time.monotonic()

    def check(self):
        if self.ms is not None and (time.monotonic() - self.t0) * 1000 > self.ms:
            raise BudgetExceeded(f"time budget of {self.ms} ms exceeded")

    def elapsed_ms(self) -> int:
        return int((time.monotonic() - self.t0) * 1000)


class Report:
    def __init__(self, command: str):
        self.command = command
        self.inputs: dict[str, str] = {}
        self.outputs: list[str] = []
        self.counters: dict[str, int] = {}
        self.verdict: str | None = None

    def add_input(self, path):
        data = Path(path).read_bytes()
        self.inputs[str(path)] = "sha256:" + hashlib.sha256(data).hexdigest()

    def emit(self, budget: Budget):
        payload = {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "ms": budget.elapsed_ms(),
            "counters": self.counters,
        }
        if self.verdict is not None:
            payload["verdict"] = self.verdict
        print(json.dumps(payload, sort_keys=True), file=sys.stderr)


def _out(text: str, path: str | None, report: Report):
    if path is None:
        sys.stdout.write(text)
    else:
        textio.atomic_write(path, text)
        report.outputs.append(path)


def cell_set_notation(C) -> str:
    return "(" + ",".join("{" + ",".join(str(x) for x in A) + "}" for A in C) + ")"


# ---------------------------------------------------------------------------
# handlers


def cmd_build(args, report, budget) -> int:
    report.add_input(args.complex)
    K = textio.read_complex(args.complex)
    report.counters["simplexes"] = len(K)
    _out(textio.format_complex(K), args.output, report)
    return 0


def cmd_bary(args, report, budget) -> int:
    report.add_input(args.complex)
    K = textio.read_complex(args.complex)
    sub = barycentric(K)
    budget.check()
    comments = [
        f"vertex {i} = {textio.format_simplex_token(s)}"
        for i, s in enumerate(sub.labels)
    ]
    report.counters["simplexes"] = len(sub.complex)
    _out(textio.format_complex(sub.complex, comments), args.output, report)
    return 0


def cmd_resolve(args, report, budget) -> int:
    report.add_input(args.complex)
    K = textio.read_complex(args.complex)
    res = resolve(K, args.n)
    budget.check()
    report.counters["hat_simplexes"] = len(res.hat)
    comments = [
        f"vertex {i} = {textio.format_label_vertex(lab)}"
        for i, lab in enumerate(res.labels)
    ]
    prefix = args.out_prefix
    textio.atomic_write(
        f"{prefix}.hat.txt", textio.format_complex(res.hat, comments)
    )
    textio.atomic_write(
        f"{prefix}.embed.txt",
        textio.format_map(res.embed, "(barycentric)", f"{prefix}.hat.txt"),
    )
    textio.atomic_write(
        f"{prefix}.project.txt",
        textio.format_map(res.project, f"{prefix}.hat.txt", "(barycentric)"),
    )
    report.outputs += [f"{prefix}.hat.txt", f"{prefix}.embed.txt", f"{prefix}.project.txt"]
    return 0


def cmd_lift(args, report, budget) -> int:
    report.add_input(args.map)
    f = textio.read_map(args.map)
    lifted = lift(f, args.n)
    budget.check()
    prefix = args.out_prefix
    rs = resolve(f.source, args.n)
    rt = resolve(f.target, args.n)
    textio.atomic_write(
        f"{prefix}.source-hat.txt",
        textio.format_complex(
            rs.hat,
            [f"vertex {i} = {textio.format_label_vertex(l)}" for i, l in enumerate(rs.labels)],
        ),
    )
    textio.atomic_write(
        f"{prefix}.target-hat.txt",
        textio.format_complex(
            rt.hat,
            [f"vertex {i} = {textio.format_label_vertex(l)}" for i, l in enumerate(rt.labels)],
        ),
    )
    textio.atomic_write(
        f"{prefix}.lift.txt",
        textio.format_map(lifted, f"{prefix}.source-hat.txt", f"{prefix}.target-hat.txt"),
    )
    report.outputs += [
        f"{prefix}.source-hat.txt", f"{prefix}.target-hat.txt", f"{prefix}.lift.txt",
    ]
    report.counters["lift_vertices"] = len(lifted.assignment)
    return 0


def cmd_grayson(args, report, budget) -> int:
    if args.budget_cells is None and (args.m > 3 or args.n > 7):
        raise ParameterError(
            "m > 3 or n > 7 grows quickly; pass --budget-cells to proceed"
        )
    cplx = enumerate_cells(args.m, args.n, args.flavor, budget_cells=args.budget_cells)
    budget.check()
    lines = [f"# staircase cells m={args.m} n={args.n} flavor={args.flavor}"]
    by_dim = cplx.by_dim()
    for k in sorted(by_dim):
        lines.append(f"dim {k}:")
        for C in by_dim[k]:
            fac = ",".join(str(x) for x in factor_vector(C))
            if is_q_cell(C):
                cls = classify_cell(C)
                partner = (
                    cell_set_notation(cls.partner) if cls.partner is not None else "-"
                )
                tail = f"lambda={cls.lam} kind={cls.kind} partner={partner}"
            else:
                tail = "lambda=- kind=- partner=-"
            lines.append(
                f"cell {cell_set_notation(C)} factors=({fac}) {tail}"
            )
    report.counters["cells"] = len(cplx)
    _out("\n".join(lines) + "\n", args.output, report)
    return 0


def cmd_collapse(args, report, budget) -> int:
    if args.cells:
        if args.m is None or args.n is None:
            raise ParameterError("--cells mode needs --m and --n")
        floor = args.floor if args.floor is not None else args.m
        seq = collapse_q(args.m, args.n, floor)
    else:
        if args.complex is None or args.n is None:
            raise ParameterError("complex mode needs a complex file and --n")
        report.add_input(args.complex)
        K = textio.read_complex(args.complex)
        rel = None
        if args.rel_subcomplex:
            report.add_input(args.rel_subcomplex)
            rel = textio.read_complex(args.rel_subcomplex)
        seq = collapse_hat(K, args.n, rel=rel)
    budget.check()
    report.counters["steps"] = len(seq.steps)
    _out(textio.format_certificate(seq), args.output, report)
    return 0


def cmd_verify_collapse(args, report, budget) -> int:
    report.add_input(args.certificate)
    if args.cells:
        if args.m is None or args.n is None:
            raise ParameterError("--cells mode needs --m and --n")
        floor = args.floor if args.floor is not None else args.m
        seq = textio.read_certificate(args.certificate, "cells")
        start = enumerate_cells(args.m, args.n, "q").cell_set()
        finish = q_finish_cells(args.m, floor)
    else:
        if args.complex is None or args.n is None:
            raise ParameterError("complex mode needs a complex file and --n")
        report.add_input(args.complex)
        K = textio.read_complex(args.complex)
        rel = None
        if args.rel_subcomplex:
            report.add_input(args.rel_subcomplex)
            rel = textio.read_complex(args.rel_subcomplex)
        seq = textio.read_certificate(args.certificate, "labels")
        res = resolve(K, args.n)
        start = hat_start_labels(res)
        finish = hat_finish_labels(res, rel)
    budget.check()
    rep = replay(seq, start, finish)
    report.counters["steps"] = len(seq.steps)
    report.counters["euler"] = rep.euler_series[0] if rep.euler_series else 0
    report.verdict = "PASS" if rep.ok else "FAIL"
    if rep.ok:
        print("PASS")
        return 0
    print(f"FAIL: {rep.first_counterexample()}")
    return 1


def cmd_homology(args, report, budget) -> int:
    report.add_input(args.complex)
    K = textio.read_complex(args.complex)
    profile = homology(K)
    budget.check()
    _out("\n".join(profile.format_lines()) + "\n", args.output, report)
    return 0


def cmd_tower(args, report, budget) -> int:
    sub = args.tower_command
    if sub == "example":
        params = {}
        if args.p is not None:
            params["p"] = args.p
        if args.base_length is not None:
            params["base_length"] = args.base_length
        if args.sphere_dim is not None:
            params["sphere_dim"] = args.sphere_dim
        T = example_tower(args.name, args.size, **params)
        _out(textio.format_tower(T), args.output, report)
        return 0

    report.add_input(args.tower)
    T = textio.read_tower(args.tower)
    if sub == "check":
        report.add_input(args.family)
        F = textio.read_family(args.family)
        result = check_family(T, F, args.mode)
        budget.check()
        report.verdict = "PASS" if result.ok else "FAIL"
        if result.ok:
            print("PASS")
            return 0
        print(f"FAIL: {result.describe()}")
        return 1
    if sub == "resolve":
        out = resolve_tower(T, args.n)
    elif sub == "skeleton":
        out = skeleton_tower(T, args.n)
    elif sub == "surjectivize":
        out = surjectivize(T)
    elif sub == "trace":
        s = tuple(int(v) for v in args.simplex.split())
        images = trace_simplex(T, args.level, s)
        text = "".join(
            f"level {args.level - 1 - i}: {textio.format_simplex_token(img)}\n"
            for i, img in enumerate(images)
        )
        _out(text, args.output, report)
        return 0
    else:  # pragma: no cover
        raise ParameterError(f"unknown tower subcommand {sub!r}")
    budget.check()
    _out(textio.format_tower(out), args.output, report)
    return 0


def cmd_selftest(args, report, budget) -> int:
    from .acceptance import run_all

    results = run_all(
        only=args.criteria, stream=sys.stdout, budget_ms=args.budget_ms
    )
    ok = all(r.ok for r in results)
    report.verdict = "PASS" if ok else "FAIL"
    report.counters["criteria"] = len(results)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nablakit",
        description="resolutions, collapse certificates, homology, towers",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-ms", type=int, default=None,
                        help="soft wall-clock budget; exit 3 when exceeded")
    common.add_argument("--budget-cells", type=int, default=None,
                        help="cap on enumerated cells/simplexes")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common],
                       help="parse and canonicalize a complex file")
    p.add_argument("complex")
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("bary", parents=[common],
                       help="barycentric subdivision of a complex")
    p.add_argument("complex")
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("resolve", parents=[common],
                       help="resolution, section and projection of a complex")
    p.add_argument("complex")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out-prefix", required=True)

    p = sub.add_parser("lift", parents=[common],
                       help="lift a simplicial map to the resolutions")
    p.add_argument("map")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out-prefix", required=True)

    p = sub.add_parser("grayson", parents=[common],
                       help="list staircase cells with classification")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--flavor", choices=("r", "q"), default="r")
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("collapse", parents=[common],
                       help="emit a collapse certificate")
    p.add_argument("complex", nargs="?", default=None)
    p.add_argument("--cells", action="store_true",
                   help="collapse the staircase cell complex instead")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--floor", type=int, default=None,
                   help="relative floor for --cells mode")
    p.add_argument("--rel-subcomplex", default=None,
                   help="complex file; collapse relative to this subcomplex")
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("verify-collapse", parents=[common],
                       help="replay and verify a collapse certificate")
    p.add_argument("certificate")
    p.add_argument("complex", nargs="?", default=None)
    p.add_argument("--cells", action="store_true")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--floor", type=int, default=None)
    p.add_argument("--rel-subcomplex", default=None)

    p = sub.add_parser("homology", parents=[common],
                       help="integer homology of a complex file")
    p.add_argument("complex")
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("tower", parents=[common], help="tower operations")
    tsub = p.add_subparsers(dest="tower_command", required=True)

    t = tsub.add_parser("example", parents=[common])
    t.add_argument("name")
    t.add_argument("size", type=int)
    t.add_argument("--p", type=int, default=None)
    t.add_argument("--base-length", type=int, default=None)
    t.add_argument("--sphere-dim", type=int, default=None)
    t.add_argument("-o", "--output", default=None)

    t = tsub.add_parser("check", parents=[common])
    t.add_argument("tower")
    t.add_argument("family")
    t.add_argument("--mode", choices=("lfd", "decomposable"), required=True)

    t = tsub.add_parser("resolve", parents=[common])
    t.add_argument("tower")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("-o", "--output", default=None)

    t = tsub.add_parser("skeleton", parents=[common])
    t.add_argument("tower")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("-o", "--output", default=None)

    t = tsub.add_parser("surjectivize", parents=[common])
    t.add_argument("tower")
    t.add_argument("-o", "--output", default=None)

    t = tsub.add_parser("trace", parents=[common])
    t.add_argument("tower")
    t.add_argument("--level", type=int, required=True)
    t.add_argument("--simplex", required=True,
                   help="space-separated vertex list, e.g. '0 1'")
    t.add_argument("-o", "--output", default=None)

    p = sub.add_parser("selftest", parents=[common],
                       help="run the acceptance criteria")
    p.add_argument("--criteria", default=None,
                   help="comma-separated criterion numbers, default all")

    return parser


HANDLERS = {
    "build": cmd_build,
    "bary": cmd_bary,
    "resolve": cmd_resolve,
    "lift": cmd_lift,
    "grayson": cmd_grayson,
    "collapse": cmd_collapse,
    "verify-collapse": cmd_verify_collapse,
    "homology": cmd_homology,
    "tower": cmd_tower,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "selftest" and args.criteria is not None:
        args.criteria = [int(x) for x in args.criteria.split(",")]
    budget = Budget(args.budget_ms)
    report = Report(args.command)
    try:
        code = HANDLERS[args.command](args, report, budget)
        budget.check()
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        report.verdict = "BUDGET"
        report.emit(budget)
        return 3
    except (InputError, ParameterError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report.emit(budget)
    return code


def console_main():  # pragma: no cover
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
