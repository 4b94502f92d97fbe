"""Command line front end.

Subcommands:

  analyze     one parameter set (q, k, m), report to stdout
  sweep       a (q, k, m) grid, full reports, optionally in parallel
  identities  a grid, identity-suite verdicts only

Exit codes: 0 success, 2 invalid or empty parameters, 3 a theorem
violation was found (the report is still written), 64 usage error,
74 output I/O error.  HECKE_JOBS sets the default worker count.
Reports are byte-identical for any worker count.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Optional

from .analysis import analyze, run_identity_suite
from .errors import InvalidWeightType, UnsupportedFormat, ZeroSpace
from .hecke import build_operators, decompose_weight
from .report import (
    ReportDocument,
    SkippedEntry,
    entry_from_analysis,
    serialize_report,
)

__all__ = ["main", "cmd_analyze", "cmd_sweep", "cmd_identities", "SweepSpec", "run_sweep"]


@dataclass(frozen=True)
class SweepSpec:
    """A parameter grid: prime powers, weights, type policy, workers."""

    q_list: tuple
    k_values: tuple
    m_policy: object = "all-types"  # "all-types" or an explicit tuple of classes
    n_cap: Optional[int] = None
    jobs: int = 1

    def tuples(self) -> list:
        out = []
        for q in self.q_list:
            if self.m_policy == "all-types":
                ms = range(1, max(q - 1, 1) + 1) if q > 2 else (1,)
            else:
                ms = self.m_policy
            for k in self.k_values:
                for m in ms:
                    out.append((q, k, m))
        return sorted(set(out))


def run_sweep(spec: SweepSpec) -> ReportDocument:
    """Analyze every tuple of the grid; skipped tuples carry their reason."""
    tasks = [(q, k, m, spec.n_cap) for (q, k, m) in spec.tuples()]
    results = _run_tasks(tasks, _analyze_tuple, spec.jobs)
    doc = ReportDocument()
    for status, payload in results:
        if status == "skip":
            q, k, m, reason = payload
            doc.skipped.append(SkippedEntry(q=q, k=k, m=m, reason=reason))
        else:
            doc.entries.append(payload)
    doc.sort()
    return doc


EXIT_OK = 0
EXIT_INVALID = 2
EXIT_VIOLATION = 3
EXIT_USAGE = 64
EXIT_IO = 74


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; the contract wants 64
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _parse_int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x != ""]


def _parse_k_values(args) -> list[int]:
    if args.k_range:
        lo, _, hi = args.k_range.partition("..")
        return list(range(int(lo), int(hi) + 1))
    if args.k is not None:
        if ".." in args.k:
            lo, _, hi = args.k.partition("..")
            return list(range(int(lo), int(hi) + 1))
        return _parse_int_list(args.k)
    return []


def _spec_from_args(args) -> SweepSpec:
    if args.types == "all":
        policy = "all-types"
    elif args.m is not None:
        policy = tuple(_parse_int_list(args.m))
    else:
        policy = (1,)
    return SweepSpec(
        q_list=tuple(_parse_int_list(args.q)),
        k_values=tuple(_parse_k_values(args)),
        m_policy=policy,
        n_cap=args.n_cap,
        jobs=args.jobs,
    )


def _analyze_tuple(task):
    q, k, m, n_cap = task
    try:
        wp = decompose_weight(q, k, m)
    except InvalidWeightType:
        return "skip", (q, k, m, "InvalidWeightType")
    except ZeroSpace:
        return "skip", (q, k, m, "ZeroSpace")
    except ValueError:
        return "skip", (q, k, m, "InvalidParameters")
    if n_cap is not None and wp.n > n_cap:
        return "skip", (q, k, m, "NCapExceeded")
    return "ok", entry_from_analysis(analyze(q, k, m))


def _identities_tuple(task):
    q, k, m, n_cap = task
    try:
        wp = decompose_weight(q, k, m)
    except InvalidWeightType:
        return "skip", (q, k, m, "InvalidWeightType")
    except ZeroSpace:
        return "skip", (q, k, m, "ZeroSpace")
    except ValueError:
        return "skip", (q, k, m, "InvalidParameters")
    if n_cap is not None and wp.n > n_cap:
        return "skip", (q, k, m, "NCapExceeded")
    ops = build_operators(wp)
    ids = run_identity_suite(ops)
    return "ok", {
        "q": wp.q,
        "p": wp.p,
        "e": wp.pp.e,
        "k": wp.k,
        "m": wp.m,
        "j": wp.j,
        "n": wp.n,
        "identities": ids,
    }


def _run_tasks(tasks, worker, jobs: int):
    if jobs <= 1 or len(tasks) <= 1:
        return [worker(t) for t in tasks]
    with Pool(processes=jobs) as pool:
        return pool.map(worker, tasks, chunksize=1)


def _emit(data: bytes, out_path) -> int:
    try:
        if out_path:
            with open(out_path, "wb") as fh:
                fh.write(data)
        else:
            sys.stdout.buffer.write(data)
            sys.stdout.buffer.flush()
    except OSError as exc:
        sys.stderr.write(f"output error: {exc}\n")
        return EXIT_IO
    return EXIT_OK


def cmd_analyze(args) -> int:
    doc = ReportDocument()
    status, payload = _analyze_tuple((args.q, args.k, args.m, None))
    if status == "skip":
        q, k, m, reason = payload
        doc.skipped.append(SkippedEntry(q=q, k=k, m=m, reason=reason))
        rc = _emit(serialize_report(doc, args.format), args.out)
        if rc:
            return rc
        sys.stderr.write(f"skipped: {reason}\n")
        return EXIT_INVALID
    doc.entries.append(payload)
    rc = _emit(serialize_report(doc, args.format), args.out)
    if rc:
        return rc
    return EXIT_VIOLATION if payload.theorem_violation else EXIT_OK


def cmd_sweep(args) -> int:
    spec = _spec_from_args(args)
    if not spec.tuples():
        sys.stderr.write("empty parameter grid\n")
        return EXIT_INVALID
    doc = run_sweep(spec)
    if not doc.entries:
        sys.stderr.write("no analyzable tuples in the grid\n")
        return EXIT_INVALID
    rc = _emit(serialize_report(doc, args.format), args.out)
    if rc:
        return rc
    violations = sum(1 for e in doc.entries if e.theorem_violation)
    id_failures = sum(
        1 for e in doc.entries for v in e.identities.values() if v is False
    )
    sys.stderr.write(
        f"analyzed {len(doc.entries)} tuples, skipped {len(doc.skipped)}; "
        f"theorem violations {violations}; identity failures {id_failures}\n"
    )
    return EXIT_VIOLATION if violations else EXIT_OK


def cmd_identities(args) -> int:
    spec = _spec_from_args(args)
    tasks = [(q, k, m, spec.n_cap) for (q, k, m) in spec.tuples()]
    if not tasks:
        sys.stderr.write("empty parameter grid\n")
        return EXIT_INVALID
    results = _run_tasks(tasks, _identities_tuple, args.jobs)
    entries = []
    skipped = []
    for status, payload in results:
        if status == "skip":
            q, k, m, reason = payload
            skipped.append({"q": q, "k": k, "m": m, "reason": reason})
        else:
            entries.append(payload)
    if not entries:
        sys.stderr.write("no analyzable tuples in the grid\n")
        return EXIT_INVALID
    entries.sort(key=lambda e: (e["q"], e["k"], e["m"]))
    skipped.sort(key=lambda s: (s["q"], s["k"], s["m"]))
    failures = sum(1 for e in entries for v in e["identities"].values() if v is False)
    if args.format == "json":
        obj = {"schema_version": 1, "entries": entries}
        if skipped:
            obj["skipped"] = skipped
        data = json.dumps(obj, separators=(",", ":")).encode()
    elif args.format == "csv":
        lines = ["q,k,m,j,n,check,passed"]
        for e in entries:
            for name, val in e["identities"].items():
                shown = "" if val is None else str(bool(val)).lower()
                lines.append(
                    f"{e['q']},{e['k']},{e['m']},{e['j']},{e['n']},{name},{shown}"
                )
        data = ("\n".join(lines) + "\n").encode()
    else:
        raise UnsupportedFormat(args.format)
    rc = _emit(data, args.out)
    if rc:
        return rc
    sys.stderr.write(
        f"checked {len(entries)} tuples, skipped {len(skipped)}; identity failures {failures}\n"
    )
    return EXIT_VIOLATION if failures else EXIT_OK


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("HECKE_JOBS", "1")))
    except ValueError:
        return 1


def _add_grid_args(sub) -> None:
    sub.add_argument("--q", required=True, help="comma separated prime powers")
    sub.add_argument("--k", help="comma separated weights")
    sub.add_argument("--k-range", dest="k_range", help="inclusive range a..b")
    sub.add_argument("--m", help="comma separated type representatives")
    sub.add_argument(
        "--types", choices=["all"], help="all: every type class 1..q-1 per q"
    )
    sub.add_argument("--n-cap", dest="n_cap", type=int, help="skip tuples with n above this")
    sub.add_argument("--jobs", type=int, default=_default_jobs())
    sub.add_argument("--format", choices=["json", "csv"], default="json")
    sub.add_argument("--out", help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="drinfeld-hecke")
    subs = parser.add_subparsers(dest="command", required=True)

    pa = subs.add_parser("analyze", help="analyze one (q, k, m)")
    pa.add_argument("--q", type=int, required=True)
    pa.add_argument("--k", type=int, required=True)
    pa.add_argument("--m", type=int, required=True)
    pa.add_argument("--format", choices=["json", "csv"], default="json")
    pa.add_argument("--out", help="output path (default stdout)")
    pa.set_defaults(func=cmd_analyze)

    ps = subs.add_parser("sweep", help="analyze a parameter grid")
    _add_grid_args(ps)
    ps.set_defaults(func=cmd_sweep)

    pi = subs.add_parser("identities", help="identity suite over a grid")
    _add_grid_args(pi)
    pi.set_defaults(func=cmd_identities)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if getattr(args, "k", None) is None and getattr(args, "k_range", None) is None:
        if args.command in ("sweep", "identities"):
            sys.stderr.write("one of --k or --k-range is required\n")
            return EXIT_USAGE
    try:
        return args.func(args)
    except ValueError as exc:
        sys.stderr.write(f"invalid parameters: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
