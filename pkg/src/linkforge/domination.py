"""Brute-force exploration of the domination relation on a fixed diagram.

``L1 >= L2`` holds when some positive crossings of L1 can be changed to give
L2.  Everything here works with one diagram at a time, so a failed search only
says that *this diagram* has no suitable descendant.  The report wording keeps
that distinction: a fingerprint match is "consistent-with" the target and an
exhausted search is a "refuted-diagram-level" verdict.
"""

from __future__ import annotations

import itertools
import json
from collections.abc import Iterator
from dataclasses import dataclass, field

from .diagram import OrientedDiagram
from .invariants import Fingerprint, fingerprint, signature
from .moves import change_crossing

__all__ = [
    "descendants",
    "flip_all",
    "CheckResult",
    "check_geq",
    "GillerCheck",
    "GillerReport",
    "giller_scan",
    "giller_holds",
]


def flip_all(d: OrientedDiagram, flips: tuple[int, ...]) -> OrientedDiagram:
    """Change every crossing in ``flips``; labels and indices are preserved."""
    out = d
    for p in flips:
        out = change_crossing(out, p)
    return out


def descendants(d: OrientedDiagram, max_flips: int | None = None) -> Iterator[tuple[tuple[int, ...], OrientedDiagram]]:
    """Yield ``(flip_set, diagram)`` for every set of at most ``max_flips`` positive crossings.

    Sets are ordered by size and then lexicographically; the empty set comes first.
    """
    positive = [i for i, x in enumerate(d.crossings) if x.sign > 0]
    top = len(positive) if max_flips is None else max_flips
    if top < 0 or top > len(positive):
        raise ValueError(f"max_flips={max_flips} but the diagram has {len(positive)} positive crossings")
    for k in range(top + 1):
        for flips in itertools.combinations(positive, k):
            yield flips, flip_all(d, flips)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a diagram-level domination search."""

    verdict: str  # "witness" | "refuted-diagram-level" | "inconclusive"
    flips: tuple[int, ...] | None
    searched: int
    exhaustive: bool
    note: str

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "flips": list(self.flips) if self.flips is not None else None,
            "searched": self.searched,
            "exhaustive": self.exhaustive,
            "note": self.note,
        }


def check_geq(d: OrientedDiagram, target: Fingerprint, max_flips: int | None = None, strict: bool = False) -> CheckResult:
    """Search for a descendant whose fingerprint is consistent with ``target``.

    With ``strict`` the full fingerprint must agree; otherwise trailing trivial
    components are allowed, matching "plus trivial components" statements.
    """
    positive = sum(x.sign > 0 for x in d.crossings)
    top = positive if max_flips is None else max_flips
    searched = 0
    for flips, child in descendants(d, top):
        searched += 1
        fp = fingerprint(child)
        if fp == target or (not strict and _matches_with_trivial(fp, target)):
            return CheckResult(
                "witness",
                flips,
                searched,
                top == positive,
                "descendant fingerprint is consistent-with the target; this is evidence, not a proof of equality",
            )
    exhaustive = top == positive
    if exhaustive:
        return CheckResult(
            "refuted-diagram-level",
            None,
            searched,
            True,
            "no descendant of this diagram matches; other diagrams of the same link are not covered",
        )
    return CheckResult("inconclusive", None, searched, False, f"only flip sets of size <= {top} were searched")


def _matches_with_trivial(fp: Fingerprint, target: Fingerprint) -> bool:
    from .laurent import LaurentPoly

    extra = fp.mu - target.mu
    if extra < 0 or fp.sigma != target.sigma:
        return False
    loop = LaurentPoly({1: -1, -1: -1})
    if fp.jones != target.jones * loop**extra:
        return False
    zeros = extra * target.mu + extra * (extra - 1) // 2
    return fp.linking == tuple(sorted(target.linking + (0,) * zeros))


@dataclass(frozen=True)
class GillerCheck:
    crossing: int
    sigma_before: int
    sigma_after: int

    @property
    def ok(self) -> bool:
        return giller_holds(self.sigma_before, self.sigma_after)


@dataclass
class GillerReport:
    checks: list[GillerCheck] = field(default_factory=list)

    @property
    def violations(self) -> list[GillerCheck]:
        return [c for c in self.checks if not c.ok]

    def to_json(self) -> str:
        body = {
            "checks": len(self.checks),
            "violations": [
                {"crossing": c.crossing, "sigma_positive": c.sigma_before, "sigma_negative": c.sigma_after}
                for c in self.violations
            ],
        }
        return json.dumps(body, sort_keys=True)


def giller_holds(sigma_positive: int, sigma_negative: int) -> bool:
    """sigma(L_-) - 2 <= sigma(L_+) <= sigma(L_-)."""
    return sigma_negative - 2 <= sigma_positive <= sigma_negative


def giller_scan(d: OrientedDiagram) -> GillerReport:
    """Check the two-sided inequality at every positive crossing."""
    base = signature(d)
    report = GillerReport()
    for i, x in enumerate(d.crossings):
        if x.sign > 0:
            report.checks.append(GillerCheck(i, base, signature(change_crossing(d, i))))
    return report
