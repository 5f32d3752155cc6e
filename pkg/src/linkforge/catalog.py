"""Curated diagrams, generated families and the fingerprint-indexed catalog.

The shipped table holds minimal PD codes of the prime knots up to ten
crossings and prime links up to nine crossings (Rolfsen names such as ``5_2``
and ``7^2_3``).  Family constructors from :mod:`linkforge.tangle` supply the
rest.  A :class:`Catalog` is a deduplicated list of entries keyed by
fingerprint and persisted as JSON.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .diagram import OrientedDiagram, connected_sum, disjoint_union, mirror, parse_pd, parse_pd_lines, reverse_components, serialize_pd
from .errors import CatalogMissing
from .invariants import Fingerprint, fingerprint, signature
from .tangle import braid_closure, pretzel, torus2, twist_knot

__all__ = [
    "SCHEMA_VERSION",
    "table",
    "table_diagram",
    "positive_forms",
    "positive_table",
    "named",
    "generated_families",
    "CatalogEntry",
    "Catalog",
]

SCHEMA_VERSION = 1


@lru_cache(maxsize=1)
def _rows() -> tuple[tuple[str, str], ...]:
    text = resources.files("linkforge").joinpath("data/rolfsen.tsv").read_text()
    rows = []
    for line in text.splitlines():
        if line.strip():
            name, pd = line.split("\t")
            rows.append((name, pd))
    return tuple(sorted(rows, key=lambda r: _name_key(r[0])))


def _name_key(name: str) -> tuple:
    # "10_3" -> (10, 1, 3); "7^2_3" -> (7, 2, 3)
    head, idx = name.split("_")
    if "^" in head:
        c, mu = head.split("^")
        return int(c), int(mu), int(idx)
    return int(head), 1, int(idx)


def table(max_crossings: int | None = None, links: bool = True) -> list[tuple[str, OrientedDiagram]]:
    """Named table diagrams, ordered by crossing number, component count, index."""
    out = []
    for name, pd in _rows():
        c, mu, _ = _name_key(name)
        if max_crossings is not None and c > max_crossings:
            continue
        if mu > 1 and not links:
            continue
        out.append((name, parse_pd(pd)))
    return out


def table_diagram(name: str) -> OrientedDiagram:
    for n, pd in _rows():
        if n == name:
            return parse_pd(pd)
    raise KeyError(name)


def positive_forms(d: OrientedDiagram) -> list[OrientedDiagram]:
    """All positive diagrams among the mirrors and component reversals of ``d``.

    Reversing every component leaves signs unchanged, so the first component
    keeps its direction.
    """
    out = []
    for m in (d, mirror(d)):
        k = len(m.components)
        for r in range(k):
            for which in itertools.combinations(range(1, k), r):
                c = reverse_components(m, which) if which else m
                if all(x.sign > 0 for x in c.crossings):
                    out.append(c)
    return out


def positive_table(max_crossings: int | None = None) -> list[tuple[str, OrientedDiagram]]:
    """Every positive orientation of a table diagram (or of its mirror)."""
    out = []
    for name, d in table(max_crossings):
        for k, p in enumerate(positive_forms(d)):
            out.append((f"{name}+{k}", p))
    return out


def _sublink_signatures(d: OrientedDiagram) -> list[int]:
    from .moves import change_crossing

    res = []
    for c in range(len(d.components)):
        q = d
        for i in range(d.n):
            u, o = d.strand_components(i)
            if u == c and o != c:
                q = change_crossing(q, i)
        res.append(signature(q))
    return res


def _link_8_3_10() -> OrientedDiagram:
    # the positive orientation in which both linked pairs are antiparallel (2,4)-torus links
    for p in positive_forms(table_diagram("8^3_10")):
        if sorted(_sublink_signatures(p)) == [-1, -1, 0]:
            return p
    raise AssertionError("no antiparallel positive orientation of 8^3_10")


def named(name: str) -> OrientedDiagram:
    """Diagrams referred to by name in the corollaries and their checks."""
    builders = {
        "right-trefoil": lambda: torus2(3),
        "left-trefoil": lambda: torus2(3, hand="left"),
        "figure-eight": lambda: twist_knot(1, "negative"),
        "hopf-right": lambda: torus2(2),
        "hopf-left": lambda: torus2(2, hand="left"),
        "torus-2-5": lambda: torus2(5),
        "torus-2-4": lambda: torus2(4),
        "torus-3-3": lambda: braid_closure([1, 2] * 3),
        "8^3_10": _link_8_3_10,
        "6_2": lambda: _chiral(table_diagram("6_2"), -2),
        "whitehead": lambda: table_diagram("5^2_1"),
    }
    if name in builders:
        return builders[name]()
    return table_diagram(name)


def _chiral(d: OrientedDiagram, sigma: int) -> OrientedDiagram:
    return d if signature(d) == sigma else mirror(d)


def generated_families(max_crossings: int = 9) -> list[tuple[str, OrientedDiagram]]:
    """Tangle-built positive families within the crossing bound."""
    out: list[tuple[str, OrientedDiagram]] = []
    for ps in itertools.combinations_with_replacement(range(1, max_crossings + 1), 3):
        if sum(ps) <= max_crossings and (all(p % 2 for p in ps) or all(p % 2 == 0 for p in ps)):
            out.append((f"pretzel{ps}", pretzel(*ps)))
    for n in range(1, (max_crossings - 2) // 2 + 1):
        out.append((f"twist_knot({n},positive)", twist_knot(n, "positive")))
    for n in range(2, max_crossings + 1):
        out.append((f"torus2({n},parallel)", torus2(n)))
        if n % 2 == 0:
            out.append((f"torus2({n},antiparallel)", torus2(n, "antiparallel")))
    an = [(k, torus2(2 * k, "antiparallel")) for k in range(1, max_crossings // 4 + 1)]
    for (k, a), (l, b) in itertools.combinations_with_replacement(an, 2):
        if 2 * (k + l) <= max_crossings:
            out.append((f"T_an({2 * k})#T_an({2 * l})", connected_sum(a, b)))
            out.append((f"T_an({2 * k})+T_an({2 * l})", disjoint_union(a, b)))
    if 6 <= max_crossings:
        out.append(("torus-3-3", named("torus-3-3")))
    if 8 <= max_crossings:
        out.append(("8^3_10", named("8^3_10")))
    return out


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    pd: str
    fingerprint: Fingerprint

    def to_json(self) -> dict:
        return {"name": self.name, "pd": self.pd, "fingerprint": self.fingerprint.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> CatalogEntry:
        return cls(data["name"], data["pd"], Fingerprint.from_json(data["fingerprint"]))


class Catalog:
    """Entries deduplicated by fingerprint; the first name seen is kept."""

    def __init__(self, entries: list[CatalogEntry] | None = None) -> None:
        self.entries: list[CatalogEntry] = []
        self._seen: dict[Fingerprint, int] = {}
        for e in entries or []:
            self.add(e.name, e.pd, e.fingerprint)

    def __len__(self) -> int:
        return len(self.entries)

    def add(self, name: str, pd: str, fp: Fingerprint | None = None) -> bool:
        """Add unless an entry with the same fingerprint exists; True if added."""
        if fp is None:
            fp = fingerprint(parse_pd(pd))
        if fp in self._seen:
            return False
        self._seen[fp] = len(self.entries)
        self.entries.append(CatalogEntry(name, pd, fp))
        return True

    def add_diagram(self, name: str, d: OrientedDiagram) -> bool:
        return self.add(name, serialize_pd(d), fingerprint(d))

    def lookup(self, fp: Fingerprint) -> CatalogEntry | None:
        k = self._seen.get(fp)
        return None if k is None else self.entries[k]

    @classmethod
    def build(cls, paths: list[str | Path]) -> Catalog:
        """Read PD files (one link per line) in the given order."""
        cat = cls()
        for path in paths:
            p = Path(path)
            for lineno, d in parse_pd_lines(p.read_text()):
                cat.add_diagram(f"{p.name}:{lineno}", d)
        return cat

    def to_json(self) -> str:
        body = {"schema": SCHEMA_VERSION, "entries": [e.to_json() for e in self.entries]}
        return json.dumps(body, sort_keys=True, indent=1)

    @classmethod
    def from_json(cls, text: str) -> Catalog:
        data = json.loads(text)
        if data.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported catalog schema {data.get('schema')!r}")
        return cls([CatalogEntry.from_json(e) for e in data["entries"]])

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json() + "\n")

    @classmethod
    def load(cls, path: str | Path) -> Catalog:
        p = Path(path)
        if not p.exists():
            raise CatalogMissing(str(p))
        return cls.from_json(p.read_text())

    def index_rows(self) -> list[tuple[int, str, int, int, str]]:
        """(index, name, mu, sigma, jones) per entry."""
        return [(k, e.name, e.fingerprint.mu, e.fingerprint.sigma, e.fingerprint.jones.serialize()) for k, e in enumerate(self.entries)]
