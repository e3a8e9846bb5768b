"""Per-pair condition routing, the (C, q) survey, and report emission.

A pair (C, q) with an exponent parity k mod 2 is checked as follows: pairs
with C*q^k != 7 (mod 8) are vacuous (the equation has no solutions with z
even at all); otherwise the main obstruction C t^2 + q^gamma = 2^m is
searched over the box with gamma = k (mod 2), and any solution with m > 6
obstructs.  With the main equation empty, odd k is immediately satisfied;
even k is satisfied when -C is a quadratic non-residue mod q, and otherwise
falls through to the Ramanujan-Nagell equation (and, for q = 7 mod 8, the
q-power equation as well).  Emptiness is always certified within the box
only.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .diophantine import (
    DEFAULT_GAMMA_MAX,
    DEFAULT_M_MAX,
    ObstructionSolution,
    solve_main,
    solve_qpow,
    solve_rn,
)
from .intmath import is_prime, legendre, primes_up_to, squarefree_check

__all__ = [
    "VACUOUS",
    "SATISFIED_WITHIN_BOX",
    "OBSTRUCTED",
    "HYPOTHESES_FAIL",
    "PairTask",
    "Verdict",
    "SurveyRow",
    "SurveyReport",
    "mod8_filter",
    "check_pair",
    "survey",
    "render_report",
]

VACUOUS = "VACUOUS"
SATISFIED_WITHIN_BOX = "SATISFIED_WITHIN_BOX"
OBSTRUCTED = "OBSTRUCTED"
HYPOTHESES_FAIL = "HYPOTHESES_FAIL"  # reserved for configuration-restricted runs

_PARITIES = ("even", "odd")


def _norm_parity(parity) -> str:
    """Accepts 'even'/'odd' or any nonnegative k, which is reduced mod 2
    (only the parity of the exponent k matters)."""
    if parity in _PARITIES:
        return parity
    if isinstance(parity, int) and parity >= 0:
        return _PARITIES[parity % 2]
    raise ValueError(f"parity must be 'even', 'odd' or a nonnegative k, got {parity!r}")


@dataclass(frozen=True)
class PairTask:
    """One (C, q, k-parity) instance with its search configuration."""

    C: int
    q: int
    parity: str
    m_max: int = DEFAULT_M_MAX
    gamma_max: int = DEFAULT_GAMMA_MAX
    witness_bound: int = 10**6

    def __post_init__(self):
        if self.C < 1 or not squarefree_check(self.C):
            raise ValueError("C must be a squarefree positive integer")
        if self.q == 2 or not is_prime(self.q):
            raise ValueError("q must be an odd prime")
        if self.C % self.q == 0:
            raise ValueError("pair outside enumeration: q divides C")
        object.__setattr__(self, "parity", _norm_parity(self.parity))

    @property
    def box(self) -> tuple[int, int]:
        return (self.m_max, self.gamma_max)


@dataclass(frozen=True)
class Verdict:
    """Outcome for one pair: status, the hypothesis that decided it, witnesses."""

    status: str
    hypothesis_path: str | None
    witnesses: tuple[ObstructionSolution, ...] = ()
    notes: tuple[str, ...] = ()


def mod8_filter(C: int, q: int, parity) -> bool:
    """True iff C*q^k = 7 (mod 8) for the given parity of k (a necessary
    condition for solutions with z even; even C can never pass)."""
    if _norm_parity(parity) == "even":
        return C % 8 == 7
    return (C * q) % 8 == 7


def check_pair(task: PairTask, diagnostics: bool = False) -> Verdict:
    """Route one pair through the conditions; see the module docstring."""
    C, q, parity = task.C, task.q, task.parity
    box_note = f"box: 0 <= m <= {task.m_max}, 0 <= gamma <= {task.gamma_max}"

    if not mod8_filter(C, q, parity):
        return Verdict(
            VACUOUS,
            None,
            (),
            ("C*q^k != 7 (mod 8): no solutions with z even exist at all",),
        )

    main_hits = tuple(
        s for s in solve_main(C, q, parity, task.m_max, task.gamma_max) if s.meets_threshold
    )
    if main_hits:
        _assert_witnesses(main_hits, C, q)
        return Verdict(OBSTRUCTED, "main", main_hits, (box_note,))

    if parity == "odd":
        return Verdict(
            SATISFIED_WITHIN_BOX,
            "a",
            (),
            ("k odd: main equation empty at threshold suffices", box_note),
        )

    if legendre(-C, q) == -1:
        notes = [f"-{C} is not a square mod {q}", box_note]
        if diagnostics:
            notes.extend(_hypothesis_b_diagnostics(task))
        return Verdict(SATISFIED_WITHIN_BOX, "b", (), tuple(notes))

    rn_hits = tuple(
        s for s in solve_rn(C, q, task.m_max, task.gamma_max) if s.meets_threshold
    )
    if q % 8 != 7:
        if rn_hits:
            _assert_witnesses(rn_hits, C, q)
            return Verdict(OBSTRUCTED, "c", rn_hits, (box_note,))
        return Verdict(
            SATISFIED_WITHIN_BOX,
            "c",
            (),
            (f"q = {q % 8} (mod 8): Ramanujan-Nagell equation empty at threshold", box_note),
        )

    qpow_hits = tuple(
        s for s in solve_qpow(C, q, task.m_max, task.gamma_max) if s.meets_threshold
    )
    hits = rn_hits + qpow_hits
    if hits:
        _assert_witnesses(hits, C, q)
        return Verdict(OBSTRUCTED, "d", hits, (box_note,))
    return Verdict(
        SATISFIED_WITHIN_BOX,
        "d",
        (),
        ("q = 7 (mod 8): both auxiliary equations empty at threshold", box_note),
    )


def _assert_witnesses(witnesses, C: int, q: int) -> None:
    for w in witnesses:
        if not w.verifies(C, q):
            raise RuntimeError(f"witness {w.triple()} fails its identity for ({C}, {q})")


def _hypothesis_b_diagnostics(task: PairTask) -> list[str]:
    """Under path (b) the printed criterion does not consult the auxiliary
    equations; report what they would have said (gamma = 0 solutions of the
    Ramanujan-Nagell equation are the interesting corner)."""
    notes = []
    rn_hits = [s for s in solve_rn(task.C, task.q, task.m_max, task.gamma_max) if s.meets_threshold]
    if rn_hits:
        notes.append(
            "diagnostic: Ramanujan-Nagell solutions exist despite path (b): "
            + ", ".join(str(s.triple()) for s in rn_hits)
        )
        if any(s.gamma == 0 for s in rn_hits):
            notes.append(
                "diagnostic: a gamma = 0 solution, where the mod-q argument is vacuous"
            )
    qpow_hits = [
        s for s in solve_qpow(task.C, task.q, task.m_max, task.gamma_max) if s.meets_threshold
    ]
    if qpow_hits:
        notes.append(
            "diagnostic: q-power equation solutions exist despite path (b): "
            + ", ".join(str(s.triple()) for s in qpow_hits)
        )
    return notes


@dataclass(frozen=True)
class SurveyRow:
    C: int
    q: int
    parity: str
    verdict: Verdict


@dataclass(frozen=True)
class SurveyReport:
    c_max: int
    q_max: int
    m_max: int
    gamma_max: int
    rows: tuple[SurveyRow, ...] = field(default_factory=tuple)

    def rows_for(self, parity: str) -> tuple[SurveyRow, ...]:
        return tuple(r for r in self.rows if r.parity == parity)

    def count(self, parity: str | None = None, status: str | None = None) -> int:
        return sum(
            1
            for r in self.rows
            if (parity is None or r.parity == parity)
            and (status is None or r.verdict.status == status)
        )

    def totals(self) -> dict[str, int]:
        return {
            "pairs": len(self.rows),
            "satisfied": self.count(status=SATISFIED_WITHIN_BOX),
            "obstructed": self.count(status=OBSTRUCTED),
            "vacuous": self.count(status=VACUOUS),
        }


def survey(
    c_max: int = 70,
    q_max: int = 97,
    m_max: int = DEFAULT_M_MAX,
    gamma_max: int = DEFAULT_GAMMA_MAX,
    parities=_PARITIES,
    diagnostics: bool = False,
) -> SurveyReport:
    """Check every admissible pair: C squarefree in [1, c_max], q an odd prime
    <= q_max with q not dividing C, and C*q^k = 7 (mod 8) for the parity.

    Pairs failing the mod-8 congruence are not enumerated at all (they are
    vacuous, not part of the totals).  Rows are ordered by (C, q, parity).
    """
    parities = tuple(_norm_parity(p) for p in parities)
    odd_primes = tuple(p for p in primes_up_to(q_max).primes if p != 2)
    rows = []
    for C in range(1, c_max + 1):
        if not squarefree_check(C):
            continue
        for q in odd_primes:
            if C % q == 0:
                continue
            for parity in parities:
                if not mod8_filter(C, q, parity):
                    continue
                task = PairTask(C, q, parity, m_max, gamma_max)
                rows.append(SurveyRow(C, q, parity, check_pair(task, diagnostics)))
    rows.sort(key=lambda r: (r.C, r.q, r.parity))
    return SurveyReport(c_max, q_max, m_max, gamma_max, tuple(rows))


def _witness_dict(w: ObstructionSolution) -> dict:
    return {"t": w.t, "gamma": w.gamma, "m": w.m, "equation": w.equation}


def _witness_cell(witnesses) -> str:
    return "+".join(f"({w.t};{w.gamma};{w.m})" for w in witnesses)


def render_report(report: SurveyReport, fmt: str) -> str:
    """Serialize a report as json, csv or a text table; deterministic output."""
    fmt = fmt.lower()
    if fmt == "json":
        payload = {
            "params": {
                "C_max": report.c_max,
                "q_max": report.q_max,
                "box": [report.m_max, report.gamma_max],
            },
            "rows": [
                {
                    "C": r.C,
                    "q": r.q,
                    "parity": r.parity,
                    "status": r.verdict.status,
                    "hypothesis_path": r.verdict.hypothesis_path,
                    "witnesses": [_witness_dict(w) for w in r.verdict.witnesses],
                    "notes": "; ".join(r.verdict.notes),
                }
                for r in report.rows
            ],
            "totals": report.totals(),
        }
        return json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["C", "q", "parity", "status", "hypothesis_path", "witnesses", "notes"])
        for r in report.rows:
            writer.writerow(
                [
                    r.C,
                    r.q,
                    r.parity,
                    r.verdict.status,
                    r.verdict.hypothesis_path or "",
                    _witness_cell(r.verdict.witnesses),
                    "; ".join(r.verdict.notes),
                ]
            )
        return buf.getvalue()
    if fmt in ("table", "text-table"):
        lines = [
            f"pairs with C <= {report.c_max}, q <= {report.q_max}, "
            f"box m <= {report.m_max}, gamma <= {report.gamma_max}",
            "",
            f"{'k mod 2':>8} | {'pairs':>6} | {'satisfied':>10}",
            "-" * 32,
        ]
        for parity in _PARITIES:
            pairs = report.count(parity=parity)
            if pairs == 0 and parity not in {r.parity for r in report.rows}:
                continue
            sat = report.count(parity=parity, status=SATISFIED_WITHIN_BOX)
            bit = 0 if parity == "even" else 1
            lines.append(f"{bit:>8} | {pairs:>6} | {sat:>10}")
        totals = report.totals()
        lines.append("-" * 32)
        lines.append(f"{'TOTAL':>8} | {totals['pairs']:>6} | {totals['satisfied']:>10}")
        lines.append("")
        for r in report.rows:
            cell = _witness_cell(r.verdict.witnesses) or "-"
            lines.append(
                f"C={r.C:<3} q={r.q:<3} {r.parity:<5} {r.verdict.status:<20} "
                f"path={r.verdict.hypothesis_path or '-':<5} witnesses={cell}"
            )
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}; use json, csv or table")
