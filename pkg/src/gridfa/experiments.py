"""Desk-scale experiment harness: oracle sweeps, budget starvation, and
the crossing-point splice counterexample.

Everything here composes the simulator with the brute-force oracles and
reports results both as aligned text tables and as ``key=value`` record
lines.  All outputs are reproducible bit for bit: enumeration order is
fixed and traces are canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

from .grid import Picture, enumerate_pictures
from .languages import in_L, make_w, oracle_for, splice_words
from .machine import Automaton, Budget, Direction, classify, ensure_valid, fmt_budget
from .simulator import Trace, accepting_trace, accepts
from .constructions import build_M_Mi, build_S_rec


class CrossingEvent(NamedTuple):
    """A vertical head move: crossing of the boundary between two rows.

    ``boundary`` is the index b of the boundary between rows b-1 and b;
    a D event raised the row from b-1 to b, a U event lowered it from b
    to b-1.  ``state`` is the state the machine lands in after the move,
    which is what determines the rest of a deterministic run.
    """

    boundary: int
    col: int
    state: str
    direction: Direction


class BudgetCount(NamedTuple):
    budget: Budget
    accepted: int
    accepted_members: int


class Mismatch(NamedTuple):
    picture: Picture
    machine_accepts: bool
    oracle_accepts: bool


class FoolingParameters(NamedTuple):
    """Machine size m, budget parameter i, and the column count z that
    forces two runs to share a crossing signature."""

    m: int
    i: int
    z: int


@dataclass(frozen=True)
class SweepReport:
    """Result of sweeping a machine against an oracle over all pictures of
    a fixed row count and bounded column count."""

    machine: str
    language: str
    rows: int
    cols_max: int
    per_budget: tuple[BudgetCount, ...]
    member_total: int
    mismatches: tuple[Mismatch, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def format_records(self) -> str:
        lines = []
        for entry in self.per_budget:
            lines.append(
                f"record=sweep machine={self.machine} language={self.language} "
                f"rows={self.rows} cols_max={self.cols_max} "
                f"budget_up={fmt_budget(entry.budget.up)} "
                f"budget_left={fmt_budget(entry.budget.left)} "
                f"accepted={entry.accepted} "
                f"accepted_members={entry.accepted_members} "
                f"member_total={self.member_total} "
                f"mismatches={len(self.mismatches)}"
            )
        return "\n".join(lines)

    def format_table(self) -> str:
        head = (
            f"machine {self.machine} vs {self.language} on "
            f"{self.rows}x(1..{self.cols_max}): "
            f"{self.member_total} members, {len(self.mismatches)} mismatches"
        )
        rows = [head]
        for entry in self.per_budget:
            rows.append(
                f"  budget ({fmt_budget(entry.budget.up)},"
                f"{fmt_budget(entry.budget.left)}): "
                f"accepted {entry.accepted}, members accepted {entry.accepted_members}"
            )
        for miss in self.mismatches[:10]:
            word = miss.picture.to_text().replace("\n", "/")
            rows.append(
                f"  MISMATCH {word}: machine={miss.machine_accepts} "
                f"oracle={miss.oracle_accepts}"
            )
        if len(self.mismatches) > 10:
            rows.append(f"  ... and {len(self.mismatches) - 10} more mismatches")
        return "\n".join(rows)


def _sweep(
    a: Automaton,
    oracle: Callable[[Picture], bool],
    rows: int,
    cols_max: int,
    budgets: Sequence[Budget | None],
    lang_id: str,
) -> SweepReport:
    per_budget = []
    mismatches: list[Mismatch] = []
    pictures = [
        p
        for cols in range(1, cols_max + 1)
        for p in enumerate_pictures(a.alphabet, rows, cols)
    ]
    expected = [oracle(p) for p in pictures]
    member_total = sum(expected)
    # Mismatches are judged at the last (largest) budget in the sweep.
    for index, budget in enumerate(budgets):
        accepted = 0
        accepted_members = 0
        last = index == len(budgets) - 1
        for p, member in zip(pictures, expected):
            verdict = accepts(a, p, budget)
            if verdict:
                accepted += 1
                if member:
                    accepted_members += 1
            if last and verdict != member:
                mismatches.append(Mismatch(p, verdict, member))
        per_budget.append(
            BudgetCount(a.budget if budget is None else budget, accepted, accepted_members)
        )
    return SweepReport(
        a.name,
        lang_id,
        rows,
        cols_max,
        tuple(per_budget),
        member_total,
        tuple(mismatches),
    )


def oracle_equivalence(a: Automaton, lang_id: str, rows: int, cols_max: int) -> SweepReport:
    """Compare the machine with the language oracle on every picture of the
    given row count with cols <= cols_max; the mismatch list is the whole
    result."""
    ensure_valid(a)
    return _sweep(a, oracle_for(lang_id), rows, cols_max, [None], lang_id)


def budget_sweep(
    a: Automaton,
    lang_id: str,
    rows: int,
    cols_max: int,
    budgets: Sequence[Budget],
) -> SweepReport:
    """Acceptance counts per budget override, against the same oracle.

    Budgets must not exceed the declared ones (overrides only lower).
    Acceptance counts are non-decreasing in the budget: any accepting run
    at a smaller budget is still an accepting run at a larger one.
    Mismatches are recorded against the last budget in the list.
    """
    ensure_valid(a)
    if not budgets:
        raise ValueError("budget_sweep needs at least one budget")
    return _sweep(a, oracle_for(lang_id), rows, cols_max, list(budgets), lang_id)


def crossing_events(trace: Trace) -> list[CrossingEvent]:
    """All vertical moves of a trace, in trace order."""
    events = []
    configs = trace.configurations()
    for index, step in enumerate(trace.steps):
        if step.direction not in (Direction.U, Direction.D):
            continue
        after = configs[index + 1]
        boundary = max(step.config.row, after.row)
        events.append(
            CrossingEvent(boundary, step.config.col, after.state, step.direction)
        )
    return events


def find_crossing_match(
    machine: Automaton,
    words: Sequence[Picture],
    boundary: int,
    require_no_upward: bool = True,
) -> tuple[Picture, Picture, CrossingEvent] | None:
    """First pair of distinct words whose canonical traces cross ``boundary``
    downward in the same column and state.

    With ``require_no_upward`` (the default), a trace that ever crosses
    the boundary upward is left out of the matching, which is the stronger
    condition the multi-pair splice argument needs.  All words must be
    accepted by the machine.
    """
    signatures: list[list[CrossingEvent]] = []
    for word in words:
        trace = accepting_trace(machine, word)
        if trace is None:
            raise ValueError(
                f"machine {machine.name!r} rejects a supplied word:\n{word}"
            )
        events = [e for e in crossing_events(trace) if e.boundary == boundary]
        if require_no_upward and any(e.direction is Direction.U for e in events):
            signatures.append([])
        else:
            signatures.append([e for e in events if e.direction is Direction.D])
    for first in range(len(words)):
        for second in range(first + 1, len(words)):
            if words[first] == words[second]:
                continue
            keys = {(e.col, e.state) for e in signatures[second]}
            for event in signatures[first]:
                if (event.col, event.state) in keys:
                    return words[first], words[second], event
    return None


def fooling_z(m: int, i: int) -> int:
    """Least column count z with (z - 1) / 2 > m * (i + 1).

    With that many columns there are more two-column words than there are
    (state, column) signatures available for their boundary crossings, so
    two different words must share one; z works out to 2m(i+1) + 2.
    """
    if m < 1 or i < 0:
        raise ValueError(f"need m >= 1 and i >= 0, got m={m}, i={i}")
    return 2 * m * (i + 1) + 2


def fooling_parameters(machine: Automaton, i: int = 0) -> FoolingParameters:
    m = len(machine.states)
    return FoolingParameters(m, i, fooling_z(m, i))


@dataclass(frozen=True)
class SpliceReport:
    """Outcome of the splice experiment.

    ``conclusive`` is False when no crossing match exists at this column
    count (legitimate for small z).  A successful demonstration has
    ``accepted=True`` and ``in_language=False``: the machine under test
    accepts a word outside L_1.
    """

    machine: str
    z: int
    conclusive: bool
    top: Picture | None = None
    bottom: Picture | None = None
    event: CrossingEvent | None = None
    word: Picture | None = None
    accepted: bool = False
    in_language: bool = False

    @property
    def demonstrates(self) -> bool:
        return self.conclusive and self.accepted and not self.in_language

    def format(self) -> str:
        if not self.conclusive:
            return (
                f"splice machine={self.machine} z={self.z}: INCONCLUSIVE "
                "(no crossing match among the generated words)"
            )
        assert self.word is not None and self.event is not None
        verdict = "ACCEPTED" if self.accepted else "REJECTED"
        membership = "IN L1" if self.in_language else "NOT IN L1"
        lines = [
            f"splice machine={self.machine} z={self.z} "
            f"match col={self.event.col} state={self.event.state} "
            f"boundary={self.event.boundary}",
            self.word.to_text(),
            f"{verdict}, {membership}",
        ]
        return "\n".join(lines)


def splice_counterexample(machine: Automaton, z: int) -> SpliceReport:
    """Run the crossing-argument splice against ``machine``.

    Generates every two-row word with matching 1s at two of z columns,
    finds two whose canonical accepting runs enter the second row in the
    same column and state, splices the first word's top row onto the
    second word's bottom row, and reports whether the machine accepts the
    splice and whether the splice is still in L_1.
    """
    ensure_valid(machine)
    words = [make_w(i, j, z) for i in range(1, z + 1) for j in range(i + 1, z + 1)]
    match = find_crossing_match(machine, words, boundary=2)
    if match is None:
        return SpliceReport(machine.name, z, conclusive=False)
    top, bottom, event = match
    word = splice_words(top, bottom, event.boundary)
    return SpliceReport(
        machine.name,
        z,
        conclusive=True,
        top=top,
        bottom=bottom,
        event=event,
        word=word,
        accepted=accepts(machine, word),
        in_language=in_L(1, word),
    )


@dataclass(frozen=True)
class HierarchyRow:
    index: int
    class_tag: str
    language: str
    members: int
    starvation: str
    mismatches: int


def hierarchy_report(i_max: int, cols_max: int) -> str:
    """Hierarchy evidence table for the deterministic chains.

    For each i up to ``i_max``: the exact-pair chain machine against M_i
    (three-way side) and the boustrophedon machine against S_{2i}
    (two-way side), each checked for oracle equivalence at full budget and
    starved at one unit less.  A starvation cell is ``confirmed`` when the
    language is non-empty in range, every member is accepted at the full
    budget, and none is accepted one unit below it.
    """
    if i_max < 1:
        raise ValueError(f"need i_max >= 1, got {i_max}")
    rows: list[HierarchyRow] = []
    for i in range(1, i_max + 1):
        for machine, lang_id, word_rows in (
            (build_M_Mi(i), f"M{i}", 2 * i),
            (build_S_rec(i - 1), f"S{2 * i}", 2),
        ):
            full = machine.budget
            starved = Budget(full.up - 1, full.left)
            report = budget_sweep(
                machine, lang_id, word_rows, cols_max, [starved, full]
            )
            low, high = report.per_budget
            if report.member_total == 0:
                starvation = "vacuous"
            elif (
                low.accepted_members == 0
                and high.accepted_members == report.member_total
            ):
                starvation = "confirmed"
            else:
                starvation = "FAILED"
            rows.append(
                HierarchyRow(
                    i,
                    str(classify(machine)),
                    lang_id,
                    report.member_total,
                    starvation,
                    len(report.mismatches),
                )
            )
    header = ("i", "class", "language", "members", "starvation", "mismatches")
    table = [header] + [
        (str(r.index), r.class_tag, r.language, str(r.members), r.starvation, str(r.mismatches))
        for r in rows
    ]
    widths = [max(len(row[c]) for row in table) for c in range(len(header))]
    lines = [
        "  ".join(cell.ljust(widths[c]) for c, cell in enumerate(row)).rstrip()
        for row in table
    ]
    lines.append("")
    for r in rows:
        lines.append(
            f"record=hierarchy i={r.index} class={r.class_tag.replace(' ', '-')} "
            f"language={r.language} members={r.members} "
            f"starvation={r.starvation} mismatches={r.mismatches}"
        )
    return "\n".join(lines)
