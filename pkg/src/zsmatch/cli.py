"""Command-line interface.

Exit codes: 0 success, 1 parse/usage error, 2 pipeline failure,
3 verification failure, 4 invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import stress
from .errors import InternalConsistencyError, PipelineFailure, ResourceError
from .fileformats import FormatError, parse_instance, parse_witness, render_instance, render_witness
from .gf import FieldSpec, is_prime
from .matching import EXACT, HEURISTIC
from .zerosum import (CycleWitness, LabelledDigraph, bf_zero_sum_cycle, cycle_sum,
                      find_zero_sum_cycle, lower_bound_witness)

OK, USAGE, PIPELINE, VERIFY, VIOLATION = 0, 1, 2, 3, 4

EXPERIMENT_COLUMNS = ["seed", "p", "d", "n", "m_used", "U_size", "cycle_length", "verified", "wall_time_ms"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)


def _read(path: str) -> str:
    try:
        with open(path, encoding="ascii", newline="") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None


def _spec(p: int, d: int) -> FieldSpec:
    if not is_prime(p):
        raise UsageError(f"--p must be prime, got {p}")
    if d < 1:
        raise UsageError(f"--d must be at least 1, got {d}")
    return FieldSpec(p, d)


def random_instance(p: int, d: int, n: int, seed: int) -> LabelledDigraph:
    """Uniform i.i.d. arc labels from ``numpy.random.default_rng(seed)``."""
    spec = _spec(p, d)
    if n < 2:
        raise UsageError(f"--n must be at least 2, got {n}")
    return LabelledDigraph.random(spec, n, np.random.default_rng(seed))


def cmd_gen(args) -> int:
    dg = random_instance(args.p, args.d, args.n, args.seed)
    _write(args.out, render_instance(dg))
    return OK


def _find(dg: LabelledDigraph, m: int | None, mode: str) -> CycleWitness:
    if dg.n < 3:
        if dg.n == 2 and cycle_sum(dg, (0, 1)).is_zero:
            return CycleWitness((0, 1), cycle_sum(dg, (0, 1)), "digon")
        raise PipelineFailure(f"no zero-sum cycle found; n = {dg.n} leaves no other cycle to try")
    return find_zero_sum_cycle(dg, m, mode)


def cmd_find(args) -> int:
    dg = parse_instance(_read(args.instance))
    if args.m is not None and args.m < 1:
        raise UsageError("--m must be at least 1")
    t0 = time.perf_counter()
    try:
        wit = _find(dg, args.m, args.mode)
    except PipelineFailure as exc:
        print(str(exc), file=sys.stderr)
        return PIPELINE
    except InternalConsistencyError as exc:
        print(f"internal consistency check failed: {exc}", file=sys.stderr)
        return VIOLATION
    verified = cycle_sum(dg, wit.vertices).is_zero
    elapsed = int((time.perf_counter() - t0) * 1000)
    _write(args.out, render_witness(wit.vertices, wit.sum))
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(EXPERIMENT_COLUMNS)
    out.writerow([args.seed, dg.spec.p, dg.spec.d, dg.n, wit.m_used, wit.u_size,
                  wit.length, int(verified), elapsed])
    return OK if verified else VERIFY


def cmd_verify(args) -> int:
    dg = parse_instance(_read(args.instance))
    vertices, recorded = parse_witness(_read(args.witness))
    if len(recorded) != dg.spec.d or any(not 0 <= c < dg.spec.p for c in recorded):
        raise FormatError("sum line does not match the instance's group")
    if any(not 0 <= v < dg.n for v in vertices):
        raise FormatError("cycle vertex out of range")
    total = cycle_sum(dg, vertices)
    if not total.is_zero:
        print(f"cycle sum is {' '.join(map(str, total.coords))}", file=sys.stderr)
        return VERIFY
    if any(recorded):
        print("recorded sum line is not zero", file=sys.stderr)
        return VERIFY
    return OK


def cmd_stress(args) -> int:
    if args.suite == "fprobe":
        res = stress.run_fprobe(args.p, args.d, args.trials, args.seed)
        print(res.row["value"])
        results = [res]
    else:
        results = stress.run_suite(args.suite, args.trials, args.seed)
    columns = []
    for r in results:
        columns += [c for c in r.row if c not in columns]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns + ["violations"], lineterminator="\n")
    writer.writeheader()
    for r in results:
        writer.writerow({**r.row, "violations": len(r.violations)})
    if args.out:
        _write(args.out, buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    bad = [r for r in results if r.violations]
    for r in bad:
        trial = r.row.get("trial", 0)
        replay = Path(args.out or "stress").with_suffix(f".violation-{trial}.json")
        _write(str(replay), stress.dump_instance(r))
        print(f"trial {trial}: {'; '.join(r.violations)} (instance written to {replay})", file=sys.stderr)
    return VIOLATION if bad else OK


def cmd_lower_bound(args) -> int:
    spec = _spec(args.p, args.d)
    if (spec.p - 1) * spec.d < 2:
        raise UsageError("(p-1)*d must be at least 2 for a digraph with cycles")
    dg = lower_bound_witness(spec)
    _write(args.out, render_instance(dg))
    if dg.n <= 6:
        found = bf_zero_sum_cycle(dg)
        if found is not None:
            print(f"zero-sum cycle {found.vertices} in the lower-bound instance", file=sys.stderr)
            return VIOLATION
        print(f"no zero-sum cycle among all cycles on {dg.n} vertices", file=sys.stderr)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zsmatch", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a random instance")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    f = sub.add_parser("find", help="find and write a zero-sum cycle")
    f.add_argument("instance")
    f.add_argument("--out", required=True)
    f.add_argument("--m", type=int)
    f.add_argument("--mode", choices=(EXACT, HEURISTIC), default=EXACT)
    f.add_argument("--seed", type=int, default=-1, help="seed recorded in the CSV row (-1: unknown)")
    f.set_defaults(func=cmd_find)

    v = sub.add_parser("verify", help="check a witness against an instance")
    v.add_argument("instance")
    v.add_argument("witness")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("stress", help="run a randomised lemma suite")
    s.add_argument("--suite", choices=stress.SUITES, required=True)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.add_argument("--p", type=int, default=3, help="fprobe only")
    s.add_argument("--d", type=int, default=1, help="fprobe only")
    s.set_defaults(func=cmd_stress)

    lb = sub.add_parser("lower-bound", help="write the (p-1)d-vertex instance with no zero-sum cycle")
    lb.add_argument("--p", type=int, required=True)
    lb.add_argument("--d", type=int, required=True)
    lb.add_argument("--out", required=True)
    lb.set_defaults(func=cmd_lower_bound)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help or an argparse error
        return exc.code if isinstance(exc.code, int) else USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"zsmatch: usage error: {exc}", file=sys.stderr)
        return USAGE
    except (FormatError, ValueError) as exc:
        print(f"zsmatch: {exc}", file=sys.stderr)
        return USAGE
    except ResourceError as exc:
        print(f"zsmatch: resource limit: {exc}", file=sys.stderr)
        return PIPELINE


if __name__ == "__main__":
    sys.exit(main())
