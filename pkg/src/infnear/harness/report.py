"""Check reports and small helpers shared by the check runners."""

from __future__ import annotations

import csv
import io
import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field

from ..monomial.ideal import MonomialIdeal, contains

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped-precondition"
INCONCLUSIVE = "inconclusive"


@dataclass
class CheckReport:
    name: str
    inputs: dict
    verdict: str = PASS
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    seed: int | None = None
    seconds: float = 0.0

    def fail(self, what, witness):
        """Record a failed assertion; ``witness`` must be replayable (a vector, weight, ...)."""
        self.verdict = FAIL
        self.witnesses.append({"assertion": what, "witness": witness})

    def expect(self, ok, what, witness=None):
        if not ok:
            self.fail(what, witness)
        return ok

    def skip(self, reason):
        self.verdict = SKIPPED
        self.details["precondition"] = reason
        return self

    @property
    def passed(self):
        return self.verdict == PASS

    def to_json(self):
        out = asdict(self)
        out["seconds"] = round(self.seconds, 4)
        return out

    def line(self):
        extra = ""
        if self.verdict == FAIL:
            extra = f"  witness: {self.witnesses[0]}"
        elif self.verdict == SKIPPED:
            extra = f"  ({self.details.get('precondition')})"
        return f"[{self.verdict}] {self.name} {json.dumps(self.inputs, sort_keys=True)}{extra}"


@contextmanager
def timed(report):
    t0 = time.perf_counter()
    try:
        yield report
    finally:
        report.seconds = time.perf_counter() - t0


def ideal_witness(A: MonomialIdeal, B: MonomialIdeal):
    """A generator of one ideal that is not in the other, or None if equal."""
    for g in A.gens:
        if not contains(B, g):
            return {"in_first_not_second": list(g)}
    for g in B.gens:
        if not contains(A, g):
            return {"in_second_not_first": list(g)}
    return None


def inclusion_witness(A: MonomialIdeal, B: MonomialIdeal):
    """Witness that ``A ⊆ B`` fails, or None."""
    for g in A.gens:
        if not contains(B, g):
            return list(g)
    return None


def merge(reports):
    return sorted(reports, key=lambda r: (r.name, json.dumps(r.inputs, sort_keys=True)))


def summary(reports):
    counts = {PASS: 0, FAIL: 0, SKIPPED: 0, INCONCLUSIVE: 0}
    for r in reports:
        counts[r.verdict] += 1
    return counts


def exit_code(reports):
    c = summary(reports)
    if c[FAIL]:
        return 1
    if c[PASS] == 0:
        return 2
    if c[INCONCLUSIVE]:
        return 2
    return 0


def to_csv(rows, fieldnames):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fieldnames)
    w.writeheader()
    for row in rows:
        w.writerow(row)
    return buf.getvalue()
