"""Line-oriented elliptic curve tables indexed by conductor.

Text format, whitespace-separated:

    # comments start with '#'
    coverage 500000
    98 98a1 1 5 0 7 0
    294 294b1 1 -9 0 28 0 -444528

Each record line is ``conductor label a1 a2 a3 a4 a6`` with an optional
trailing stored minimal discriminant, which must then agree with the
discriminant computed from the (assumed minimal) model.  The ``coverage``
directive declares the bound up to which the table is complete by
conductor; completeness is an explicit input, never an assumption.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .ellcurve import CurveGeneral, general_invariants

__all__ = [
    "CurveRecord",
    "CurveDatabase",
    "parse_db",
    "load_db",
    "serialize_db",
    "by_conductor",
]


@dataclass(frozen=True)
class CurveRecord:
    conductor: int
    label: str
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    min_disc: int
    line_no: int = field(default=0, compare=False)

    def model(self) -> CurveGeneral:
        return CurveGeneral(self.a1, self.a2, self.a3, self.a4, self.a6)


@dataclass(frozen=True)
class CurveDatabase:
    records: tuple[CurveRecord, ...]
    coverage_bound: int | None = None

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


def parse_db(source: str) -> CurveDatabase:
    """Parse the text format above; malformed lines fail with their number."""
    records = []
    coverage = None
    for line_no, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "coverage":
            if len(fields) != 2:
                raise ValueError(f"line {line_no}: coverage directive takes one bound")
            try:
                coverage = int(fields[1])
            except ValueError:
                raise ValueError(f"line {line_no}: coverage bound must be an integer") from None
            continue
        if len(fields) not in (7, 8):
            raise ValueError(
                f"line {line_no}: expected 'conductor label a1 a2 a3 a4 a6 [disc]', "
                f"got {len(fields)} fields"
            )
        label = fields[1]
        try:
            conductor = int(fields[0])
            a_invs = tuple(int(v) for v in fields[2:7])
            stored = int(fields[7]) if len(fields) == 8 else None
        except ValueError:
            raise ValueError(f"line {line_no}: non-integer field") from None
        if conductor < 1:
            raise ValueError(f"line {line_no}: conductor must be positive")
        try:
            disc = general_invariants(CurveGeneral(*a_invs)).disc
        except ValueError:
            raise ValueError(f"line {line_no}: curve {label} is singular") from None
        if stored is not None and stored != disc:
            raise ValueError(
                f"line {line_no}: curve {label} stores disc {stored}, model gives {disc}"
            )
        records.append(CurveRecord(conductor, label, *a_invs, disc, line_no))
    return CurveDatabase(tuple(records), coverage)


def load_db(path) -> CurveDatabase:
    return parse_db(Path(path).read_text(encoding="utf-8"))


def serialize_db(db: CurveDatabase) -> str:
    """Canonical text for a database; parse(serialize(db)) preserves records."""
    lines = []
    if db.coverage_bound is not None:
        lines.append(f"coverage {db.coverage_bound}")
    for rec in db.records:
        lines.append(
            f"{rec.conductor} {rec.label} {rec.a1} {rec.a2} {rec.a3} {rec.a4} "
            f"{rec.a6} {rec.min_disc}"
        )
    return "\n".join(lines) + "\n"


def by_conductor(db: CurveDatabase, conductor: int) -> tuple[tuple[CurveRecord, ...], str]:
    """Records with the given conductor plus a coverage flag.

    The flag is "complete" only when the table header declares coverage at
    least up to the queried conductor, else "unknown".
    """
    records = tuple(rec for rec in db.records if rec.conductor == conductor)
    covered = db.coverage_bound is not None and 1 <= conductor <= db.coverage_bound
    return records, ("complete" if covered else "unknown")
