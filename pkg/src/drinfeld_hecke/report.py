"""Machine-readable report documents: JSON (schema v1) and CSV slope tables.

JSON layout:

    {"schema_version": 1,
     "entries": [{"q": ..., "p": ..., "e": ..., "k": ..., "m": ..., "j": ...,
                  "n": ..., "dim_level1": ..., "dim_old": ..., "dim_new": ...,
                  "tt_injective": ..., "tt_injective_crosscheck": ...,
                  "direct_sum": ..., "direct_sum_crosscheck": ...,
                  "dirsum_det_tvaluation": int or null,
                  "identities": {"name": true/false/null, ...},
                  "slopes": [{"slope": "a/b", "mult": m}, ...],
                  "zero_count": ...}, ...],
     "skipped": [{"q": ..., "k": ..., "m": ..., "reason": ...}, ...]}

The "skipped" key is omitted when empty.  m always records the class
representative in [1, q-1] actually analyzed (q-1 stands for class 0);
skipped entries echo the m that was requested.  Entries sort by
(q, k, m).  CSV holds the slope table only, one row per slope, with the
columns q,k,m,j,n,slope_num,slope_den,multiplicity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .analysis import AnalysisReport
from .errors import UnsupportedFormat
from .linalg import SlopeMultiset

__all__ = [
    "ReportEntry",
    "SkippedEntry",
    "ReportDocument",
    "entry_from_analysis",
    "serialize_report",
    "parse_report",
    "SCHEMA_VERSION",
]

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class SkippedEntry:
    q: int
    k: int
    m: int
    reason: str


@dataclass(frozen=True, eq=False)
class ReportEntry:
    q: int
    p: int
    e: int
    k: int
    m: int
    j: int
    n: int
    dim_level1: int
    dim_old: int
    dim_new: int
    tt_injective: bool
    tt_injective_crosscheck: bool
    direct_sum: bool
    direct_sum_crosscheck: bool
    dirsum_det_tvaluation: object
    identities: dict
    slopes: tuple
    zero_count: int

    @property
    def theorem_violation(self) -> bool:
        if self.direct_sum != self.direct_sum_crosscheck:
            return True
        if self.tt_injective != self.tt_injective_crosscheck:
            return True
        if self.dim_level1 <= 1 and not (self.tt_injective and self.direct_sum):
            return True
        return any(v is False for v in self.identities.values())


@dataclass
class ReportDocument:
    entries: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION

    def sort(self) -> None:
        self.entries.sort(key=lambda e: (e.q, e.k, e.m))
        self.skipped.sort(key=lambda s: (s.q, s.k, s.m))


def entry_from_analysis(rep: AnalysisReport) -> ReportEntry:
    wp = rep.params
    return ReportEntry(
        q=wp.q,
        p=wp.p,
        e=wp.pp.e,
        k=wp.k,
        m=wp.m,
        j=wp.j,
        n=wp.n,
        dim_level1=rep.dim_level1,
        dim_old=rep.dim_old,
        dim_new=rep.dim_new,
        tt_injective=rep.tt_injective,
        tt_injective_crosscheck=rep.tt_injective_crosscheck,
        direct_sum=rep.direct_sum,
        direct_sum_crosscheck=rep.direct_sum_crosscheck,
        dirsum_det_tvaluation=rep.dirsum_det_tvaluation,
        identities=dict(rep.identities),
        slopes=tuple((s, m) for s, m in rep.slopes.entries),
        zero_count=rep.slopes.zero_count,
    )


def _entry_to_obj(e: ReportEntry) -> dict:
    return {
        "q": e.q,
        "p": e.p,
        "e": e.e,
        "k": e.k,
        "m": e.m,
        "j": e.j,
        "n": e.n,
        "dim_level1": e.dim_level1,
        "dim_old": e.dim_old,
        "dim_new": e.dim_new,
        "tt_injective": e.tt_injective,
        "tt_injective_crosscheck": e.tt_injective_crosscheck,
        "direct_sum": e.direct_sum,
        "direct_sum_crosscheck": e.direct_sum_crosscheck,
        "dirsum_det_tvaluation": e.dirsum_det_tvaluation,
        "identities": e.identities,
        "slopes": [
            {"slope": f"{s.numerator}/{s.denominator}", "mult": m} for s, m in e.slopes
        ],
        "zero_count": e.zero_count,
    }


def _entry_from_obj(obj: dict) -> ReportEntry:
    slopes = tuple(
        (Fraction(item["slope"]), int(item["mult"])) for item in obj["slopes"]
    )
    return ReportEntry(
        q=obj["q"],
        p=obj["p"],
        e=obj["e"],
        k=obj["k"],
        m=obj["m"],
        j=obj["j"],
        n=obj["n"],
        dim_level1=obj["dim_level1"],
        dim_old=obj["dim_old"],
        dim_new=obj["dim_new"],
        tt_injective=obj["tt_injective"],
        tt_injective_crosscheck=obj["tt_injective_crosscheck"],
        direct_sum=obj["direct_sum"],
        direct_sum_crosscheck=obj["direct_sum_crosscheck"],
        dirsum_det_tvaluation=obj["dirsum_det_tvaluation"],
        identities=dict(obj["identities"]),
        slopes=slopes,
        zero_count=obj["zero_count"],
    )


def serialize_report(doc: ReportDocument, fmt: str) -> bytes:
    """Render the document; deterministic byte output for identical input."""
    doc.sort()
    if fmt == "json":
        obj: dict = {
            "schema_version": doc.schema_version,
            "entries": [_entry_to_obj(e) for e in doc.entries],
        }
        if doc.skipped:
            obj["skipped"] = [
                {"q": s.q, "k": s.k, "m": s.m, "reason": s.reason} for s in doc.skipped
            ]
        return json.dumps(obj, separators=(",", ":")).encode()
    if fmt == "csv":
        lines = ["q,k,m,j,n,slope_num,slope_den,multiplicity"]
        for e in doc.entries:
            for s, mult in e.slopes:
                lines.append(
                    f"{e.q},{e.k},{e.m},{e.j},{e.n},{s.numerator},{s.denominator},{mult}"
                )
        return ("\n".join(lines) + "\n").encode()
    raise UnsupportedFormat(f"unknown format {fmt!r}")


def parse_report(data: bytes) -> ReportDocument:
    """Inverse of JSON serialization."""
    obj = json.loads(data.decode())
    doc = ReportDocument(schema_version=obj["schema_version"])
    doc.entries = [_entry_from_obj(e) for e in obj["entries"]]
    doc.skipped = [
        SkippedEntry(q=s["q"], k=s["k"], m=s["m"], reason=s["reason"])
        for s in obj.get("skipped", [])
    ]
    return doc


def slope_multiset_of_entry(e: ReportEntry) -> SlopeMultiset:
    return SlopeMultiset(entries=e.slopes, zero_count=e.zero_count)
