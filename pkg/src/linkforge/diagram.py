"""Oriented link diagrams in PD form.

A crossing is a 4-tuple ``(a, b, c, d)`` of edge labels read around the
crossing in the rotational sense of the model plane, starting at the incoming
under-strand ``a``; the under-strand leaves along ``c``.  The sign is +1 exactly
when the over-strand runs from ``b`` to ``d``.  With this reading the closed
positive 2-braids ``X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)`` and
``X(1,4,2,3) X(3,2,4,1)`` are positive.

Corners of the rotation system are indexed ``(crossing, i)`` for the sector
between positions ``i`` and ``i + 1``; the face to the left of an edge that
enters a crossing at position ``p`` is the corner ``(crossing, p)``.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .errors import EdgeLabelError, MalformedToken, NonPlanar, OrientationError

__all__ = [
    "Crossing",
    "OrientedDiagram",
    "PositivityClass",
    "StructuralReport",
    "build_diagram",
    "build_with_map",
    "parse_pd",
    "parse_pd_lines",
    "serialize_pd",
    "writhe",
    "seifert_circles",
    "positivity",
    "structural_report",
    "mirror",
    "reverse_components",
    "relabel",
    "disjoint_union",
    "connected_sum",
    "unknot",
]


@dataclass(frozen=True)
class Crossing:
    a: int
    b: int
    c: int
    d: int
    sign: int

    @property
    def labels(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def over_in_pos(self) -> int:
        return 1 if self.sign > 0 else 3

    @property
    def incoming(self) -> tuple[int, int]:
        """Positions at which strands enter."""
        return (0, self.over_in_pos)

    def out_pos(self, in_pos: int) -> int:
        return (in_pos + 2) % 4

    def seifert_out_pos(self, in_pos: int) -> int:
        """Outgoing position joined to ``in_pos`` by the oriented smoothing."""
        if self.sign > 0:
            return 3 if in_pos == 0 else 2
        return 1 if in_pos == 0 else 2

    def __str__(self) -> str:
        return "X(%d,%d,%d,%d)" % self.labels


@dataclass(frozen=True)
class PositivityClass:
    m: int

    @property
    def is_positive(self) -> bool:
        return self.m == 0

    @property
    def is_almost_positive(self) -> bool:
        return self.m == 1

    @property
    def is_2_almost_positive(self) -> bool:
        return self.m == 2


@dataclass(frozen=True)
class StructuralReport:
    nugatory: frozenset[int]
    reduced: bool
    r2_reduced: bool
    connected: bool
    prime_factors: tuple[OrientedDiagram, ...]


@dataclass(frozen=True, eq=True)
class OrientedDiagram:
    """Immutable oriented link diagram.

    ``crossings`` are indexed by position; ``unknot_circles`` counts
    crossingless components that PD tuples cannot express.
    """

    crossings: tuple[Crossing, ...] = ()
    unknot_circles: int = 0
    _checked: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "crossings", tuple(self.crossings))
        if self.unknot_circles < 0:
            raise ValueError("unknot_circles must be non-negative")
        if not self._checked:
            self._validate()

    # -- validation -------------------------------------------------------

    def _validate(self) -> None:
        n = len(self.crossings)
        seen: dict[int, int] = {}
        for x in self.crossings:
            if x.sign not in (1, -1):
                raise EdgeLabelError(f"bad sign in {x}")
            for e in x.labels:
                seen[e] = seen.get(e, 0) + 1
        bad = sorted(e for e, k in seen.items() if k != 2)
        if bad:
            raise EdgeLabelError(f"labels appearing other than twice: {bad}")
        if set(seen) != set(range(1, 2 * n + 1)):
            raise EdgeLabelError(f"labels must be exactly 1..{2 * n}")
        heads, tails = {}, {}
        for i, x in enumerate(self.crossings):
            for p in range(4):
                target = heads if p in x.incoming else tails
                e = x.labels[p]
                if e in target:
                    raise OrientationError(f"edge {e} enters or leaves twice")
                target[e] = (i, p)
        self._check_planar()

    def _check_planar(self) -> None:
        for comp in self.projection_components:
            faces = {self.corner_face[(i, p)] for i in comp for p in range(4)}
            if len(faces) != len(comp) + 2:
                raise NonPlanar(
                    f"face count {len(faces)} != {len(comp) + 2} on crossings {sorted(comp)}"
                )

    # -- edge structure ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.crossings)

    @cached_property
    def heads(self) -> dict[int, tuple[int, int]]:
        """Edge label -> (crossing, position) where the edge ends."""
        out = {}
        for i, x in enumerate(self.crossings):
            for p in x.incoming:
                out[x.labels[p]] = (i, p)
        return out

    @cached_property
    def tails(self) -> dict[int, tuple[int, int]]:
        out = {}
        for i, x in enumerate(self.crossings):
            for p in x.incoming:
                q = (p + 2) % 4
                out[x.labels[q]] = (i, q)
        return out

    def successor(self, e: int) -> int:
        i, p = self.heads[e]
        x = self.crossings[i]
        return x.labels[(p + 2) % 4]

    def twin(self, i: int, p: int) -> tuple[int, int]:
        """The other end of the edge at (crossing i, position p)."""
        e = self.crossings[i].labels[p]
        h, t = self.heads[e], self.tails[e]
        return t if h == (i, p) else h

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Edge labels of each component along its orientation.

        Components with crossings come first, ordered by smallest label;
        crossingless circles are not listed here.
        """
        left = set(self.heads)
        comps = []
        while left:
            start = min(left)
            seq = [start]
            e = self.successor(start)
            while e != start:
                seq.append(e)
                e = self.successor(e)
            left.difference_update(seq)
            comps.append(tuple(seq))
        return tuple(comps)

    @cached_property
    def component_of(self) -> dict[int, int]:
        return {e: k for k, comp in enumerate(self.components) for e in comp}

    @property
    def mu(self) -> int:
        return len(self.components) + self.unknot_circles

    def strand_components(self, i: int) -> tuple[int, int]:
        """(under component, over component) at crossing i."""
        x = self.crossings[i]
        return self.component_of[x.a], self.component_of[x.b]

    def is_self_crossing(self, i: int) -> bool:
        u, o = self.strand_components(i)
        return u == o

    # -- rotation system --------------------------------------------------

    @cached_property
    def corner_face(self) -> dict[tuple[int, int], int]:
        face_of: dict[tuple[int, int], int] = {}
        fid = 0
        for i in range(self.n):
            for p in range(4):
                if (i, p) in face_of:
                    continue
                cur = (i, p)
                while cur not in face_of:
                    face_of[cur] = fid
                    j, q = self.twin(cur[0], (cur[1] + 1) % 4)
                    cur = (j, q)
                fid += 1
        return face_of

    @cached_property
    def faces(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Corners of each face, in tracing order."""
        done = set()
        faces = []
        for i in range(self.n):
            for p in range(4):
                if (i, p) in done:
                    continue
                walk = []
                cur = (i, p)
                while cur not in done:
                    done.add(cur)
                    walk.append(cur)
                    cur = self.twin(cur[0], (cur[1] + 1) % 4)
                faces.append(tuple(walk))
        faces.sort(key=lambda w: self.corner_face[w[0]])
        return tuple(faces)

    def left_face(self, e: int) -> int:
        i, p = self.heads[e]
        return self.corner_face[(i, p)]

    def right_face(self, e: int) -> int:
        i, p = self.heads[e]
        return self.corner_face[(i, (p - 1) % 4)]

    def face_edges(self, f: int) -> tuple[int, ...]:
        """Edges on the boundary of face f, one per boundary step."""
        walk = self.faces[f]
        return tuple(self.crossings[i].labels[(p + 1) % 4] for i, p in walk)

    @cached_property
    def projection_components(self) -> tuple[frozenset[int], ...]:
        """Crossing sets of the connected pieces of the projection."""
        parent = list(range(self.n))

        def find(u):
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        for e in self.heads:
            u, v = find(self.heads[e][0]), find(self.tails[e][0])
            if u != v:
                parent[u] = v
        groups: dict[int, set] = {}
        for i in range(self.n):
            groups.setdefault(find(i), set()).add(i)
        return tuple(sorted((frozenset(g) for g in groups.values()), key=min))

    @property
    def is_connected(self) -> bool:
        pieces = len(self.projection_components) + self.unknot_circles
        return pieces == 1

    # -- misc -------------------------------------------------------------

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(x.sign for x in self.crossings)

    def __str__(self) -> str:
        return serialize_pd(self)

    def canonical_form(self) -> tuple:
        """Label and crossing-order independent key for structural equality."""
        keys = []
        for comp in self.projection_components:
            edges = [e for e in self.heads if self.heads[e][0] in comp]
            keys.append(min(self._rooted_key(e0) for e0 in edges))
        keys.sort()
        return (tuple(keys), self.unknot_circles)

    def _rooted_key(self, e0: int) -> tuple:
        label: dict[int, int] = {}
        nxt = 1
        queue = [e0]
        order_cross: list[int] = []
        seen_cross: set[int] = set()
        while queue:
            e = queue.pop(0)
            if e in label:
                continue
            cur = e
            while cur not in label:
                label[cur] = nxt
                nxt += 1
                i = self.heads[cur][0]
                if i not in seen_cross:
                    seen_cross.add(i)
                    order_cross.append(i)
                cur = self.successor(cur)
            for i in list(order_cross):
                for f in self.crossings[i].labels:
                    if f not in label:
                        queue.append(f)
        tuples = sorted(
            (tuple(label[f] for f in self.crossings[i].labels), self.crossings[i].sign)
            for i in seen_cross
        )
        return tuple(tuples)


def unknot(circles: int = 1) -> OrientedDiagram:
    return OrientedDiagram((), circles)


# -- construction from raw data ----------------------------------------------


def build_diagram(
    raw: Iterable[tuple[int, int, int, int, int]],
    circles: int = 0,
    order: Sequence[int] | None = None,
) -> OrientedDiagram:
    """Relabel raw crossings ``(a, b, c, d, sign)`` with arbitrary integer labels.

    Each label must occur once entering and once leaving a crossing.  Edges
    are renumbered by traversal: components are taken in order of their
    smallest raw label (or in ``order`` of raw start labels, if given) and
    numbered consecutively from there.
    """
    return build_with_map(raw, circles, order)[0]


def build_with_map(
    raw: Iterable[tuple[int, int, int, int, int]],
    circles: int = 0,
    order: Sequence[int] | None = None,
) -> tuple[OrientedDiagram, dict[int, int]]:
    """Like :func:`build_diagram` but also return the raw-to-new label map."""
    raw = [tuple(r) for r in raw]
    heads, tails = {}, {}
    for i, (a, b, c, d, s) in enumerate(raw):
        labs = (a, b, c, d)
        ins = (0, 1 if s > 0 else 3)
        for p in range(4):
            target = heads if p in ins else tails
            if labs[p] in target:
                raise OrientationError(f"raw edge {labs[p]} enters or leaves twice")
            target[labs[p]] = (i, p)
    if set(heads) != set(tails):
        raise EdgeLabelError("raw edge without both ends")

    def succ(e):
        i, p = heads[e]
        r = raw[i]
        return (r[0], r[1], r[2], r[3])[(p + 2) % 4]

    left = set(heads)
    starts = list(order or []) + sorted(left)
    comps = []
    for start in starts:
        if start not in left:
            continue
        seq = [start]
        e = succ(start)
        while e != start:
            seq.append(e)
            e = succ(e)
        left.difference_update(seq)
        comps.append(seq)
    # a 2-edge component met only as over-strand must start at the edge
    # entering the earlier crossing, so that parsing recovers the orientation
    for k, seq in enumerate(comps):
        if len(seq) == 2 and all(heads[e][1] != 0 and tails[e][1] != 2 for e in seq):
            if heads[seq[1]][0] < heads[seq[0]][0]:
                comps[k] = [seq[1], seq[0]]
    new = {}
    nxt = 1
    for seq in comps:
        for e in seq:
            new[e] = nxt
            nxt += 1
    crossings = tuple(
        Crossing(new[a], new[b], new[c], new[d], 1 if s > 0 else -1) for a, b, c, d, s in raw
    )
    return OrientedDiagram(crossings, circles), new


# -- parsing ------------------------------------------------------------------

_X_TOKEN = re.compile(r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")
_O_TOKEN = re.compile(r"O\*(\d+)")


def _tokenize(line: str, lineno: int | None) -> tuple[list[tuple[int, ...]], int]:
    body = line.split("#", 1)[0]
    tuples: list[tuple[int, ...]] = []
    circles = 0
    saw_o = False
    for tok in body.split():
        m = _X_TOKEN.fullmatch(tok)
        if m:
            if saw_o:
                raise MalformedToken(f"crossing token {tok!r} after circle suffix", lineno)
            tuples.append(tuple(int(g) for g in m.groups()))
            continue
        m = _O_TOKEN.fullmatch(tok)
        if m and not saw_o:
            saw_o = True
            circles = int(m.group(1))
            continue
        raise MalformedToken(f"unexpected token {tok!r}", lineno)
    return tuples, circles


def _orient(tuples: list[tuple[int, ...]]) -> list[int]:
    """Solve for crossing signs so each edge enters and leaves exactly once.

    Crossing i has unknown s_i (over-strand enters at b when s_i = +1).  Each
    edge gives a parity constraint between its two ends; classes left free
    (components met only as over-strand) are settled by label succession.
    """
    n = len(tuples)
    occ: dict[int, list[tuple[int, int]]] = {}
    for i, t in enumerate(tuples):
        for p, e in enumerate(t):
            occ.setdefault(e, []).append((i, p))
    # head indicator of an occurrence as an affine function of v_i = [s_i = +1]
    # pos0 -> 1, pos2 -> 0, pos1 -> v_i, pos3 -> 1 + v_i (mod 2)
    parent = list(range(n + 1))  # node n is the constant "true"
    parity = [0] * (n + 1)

    def find(u):
        if parent[u] == u:
            return u, 0
        r, par = find(parent[u])
        parent[u] = r
        parity[u] ^= par
        return r, parity[u]

    def union(u, v, rel):
        ru, pu = find(u)
        rv, pv = find(v)
        if ru == rv:
            if pu ^ pv != rel:
                raise OrientationError("component traversal inconsistent")
            return
        parent[ru] = rv
        parity[ru] = pu ^ pv ^ rel

    def affine(i, p):
        # returns (variable or None, constant)
        if p == 0:
            return None, 1
        if p == 2:
            return None, 0
        if p == 1:
            return i, 0
        return i, 1

    const = n
    for e, occs in occ.items():
        (i1, p1), (i2, p2) = occs
        v1, c1 = affine(i1, p1)
        v2, c2 = affine(i2, p2)
        # h1 + h2 = 1
        rhs = 1 ^ c1 ^ c2
        u = const if v1 is None else v1
        w = const if v2 is None else v2
        if u == const and w == const:
            if rhs != 0:
                raise OrientationError(f"edge {e} enters or leaves twice")
            continue
        if (u == const) != (w == const):
            rhs ^= 1  # the constant node itself carries the value 1
        union(u, w, rhs)

    values: dict[int, int] = {}
    rc, pc = find(const)
    free_roots: dict[int, list[int]] = {}
    for i in range(n):
        r, p = find(i)
        if r == rc:
            values[i] = p ^ pc ^ 1
        else:
            free_roots.setdefault(r, []).append(i)
    for r, members in free_roots.items():
        best = None
        for guess in (1, 0):
            trial = {i: (find(i)[1] ^ find(r)[1] ^ guess) for i in members}
            score = _succession_score(tuples, members, trial)
            key = (score, _tie_rule(tuples, members, trial))
            if best is None or key > best[0]:
                best = (key, trial)
        values.update(best[1])
    return [1 if values[i] else -1 for i in range(n)]


def _succession_score(tuples, members, trial) -> int:
    score = 0
    for i in members:
        t = tuples[i]
        src, dst = (t[1], t[3]) if trial[i] else (t[3], t[1])
        if dst == src + 1:
            score += 1
    return score


def _tie_rule(tuples, members, trial) -> int:
    # the smaller label of the pair enters at the earlier crossing
    i = min(members)
    t = tuples[i]
    incoming = t[1] if trial[i] else t[3]
    outgoing = t[3] if trial[i] else t[1]
    return 1 if incoming < outgoing else 0


def _diagram_from_tuples(tuples: list[tuple[int, ...]], circles: int, lineno: int | None) -> OrientedDiagram:
    counts: dict[int, int] = {}
    for t in tuples:
        for e in t:
            counts[e] = counts.get(e, 0) + 1
    once = sorted(e for e, k in counts.items() if k != 2)
    if once:
        raise EdgeLabelError(
            (f"line {lineno}: " if lineno is not None else "")
            + f"labels not appearing exactly twice: {once}"
        )
    n = len(tuples)
    if set(counts) != set(range(1, 2 * n + 1)):
        raise EdgeLabelError(f"labels must be exactly 1..{2 * n}")
    signs = _orient(tuples)
    crossings = tuple(Crossing(*t, s) for t, s in zip(tuples, signs))
    return OrientedDiagram(crossings, circles)


def parse_pd(text: str, unknot_circles: int = 0) -> OrientedDiagram:
    """Parse a single link.  Blank or comment-only text gives the empty diagram."""
    links = parse_pd_lines(text)
    if len(links) > 1:
        raise MalformedToken(f"expected one link, found {len(links)}", links[1][0])
    if not links:
        return OrientedDiagram((), unknot_circles)
    d = links[0][1]
    if unknot_circles:
        d = OrientedDiagram(d.crossings, d.unknot_circles + unknot_circles, _checked=True)
    return d


def parse_pd_lines(text: str) -> list[tuple[int, OrientedDiagram]]:
    """Parse a PD file: one link per non-blank line, returned with line numbers."""
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.split("#", 1)[0].strip():
            continue
        tuples, circles = _tokenize(line, lineno)
        out.append((lineno, _diagram_from_tuples(tuples, circles, lineno)))
    return out


def serialize_pd(d: OrientedDiagram) -> str:
    parts = [str(x) for x in d.crossings]
    if d.unknot_circles:
        parts.append(f"O*{d.unknot_circles}")
    return " ".join(parts)


# -- simple invariants of the diagram ---------------------------------------------


def writhe(d: OrientedDiagram) -> int:
    return sum(x.sign for x in d.crossings)


def seifert_circles(d: OrientedDiagram) -> tuple[int, dict[int, int]]:
    """Number of Seifert circles and the circle index of every edge.

    Crossingless components count as circles but carry no edges.
    """
    circle_of: dict[int, int] = {}
    k = 0
    for start in sorted(d.heads):
        if start in circle_of:
            continue
        e = start
        while e not in circle_of:
            circle_of[e] = k
            i, p = d.heads[e]
            x = d.crossings[i]
            e = x.labels[x.seifert_out_pos(p)]
        k += 1
    return k + d.unknot_circles, circle_of


def positivity(d: OrientedDiagram) -> PositivityClass:
    return PositivityClass(sum(1 for x in d.crossings if x.sign < 0))


# -- structure ----------------------------------------------------------------


def _nugatory(d: OrientedDiagram) -> frozenset[int]:
    out = set()
    for comp in d.projection_components:
        for v in comp:
            # edges incident to v become open arcs; count pieces of the rest
            parent: dict = {}

            def find(u):
                while parent.setdefault(u, u) != u:
                    parent[u] = parent[parent[u]]
                    u = parent[u]
                return u

            nodes = set()
            for e in d.heads:
                h, t = d.heads[e][0], d.tails[e][0]
                if h not in comp:
                    continue
                enode = ("e", e)
                nodes.add(enode)
                for end in (h, t):
                    if end != v:
                        nodes.add(("x", end))
                        parent[find(enode)] = find(("x", end))
            roots = {find(u) for u in nodes}
            if len(roots) > 1:
                out.add(v)
    return frozenset(out)


def _split_along(d: OrientedDiagram, e: int, f: int) -> tuple[OrientedDiagram, OrientedDiagram] | None:
    """Cut edges e and f; return the two sides if both contain crossings."""
    comp = next(c for c in d.projection_components if d.heads[e][0] in c)
    parent = {i: i for i in comp}

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for g in d.heads:
        if g in (e, f) or d.heads[g][0] not in comp:
            continue
        u, v = find(d.heads[g][0]), find(d.tails[g][0])
        if u != v:
            parent[u] = v
    roots = {find(i) for i in comp}
    if len(roots) != 2:
        return None
    side_of_tail_e = find(d.tails[e][0])
    if find(d.heads[e][0]) == side_of_tail_e:
        return None
    sides = []
    for root, (out_edge, in_edge) in ((side_of_tail_e, (e, f)), (find(d.heads[e][0]), (f, e))):
        # out_edge leaves this side at its tail; in_edge comes back at its head
        members = [i for i in comp if find(i) == root]
        raw = []
        for i in members:
            x = d.crossings[i]
            labs = list(x.labels)
            for p in range(4):
                if labs[p] == in_edge and d.heads[in_edge] == (i, p):
                    labs[p] = out_edge
            raw.append((*labs, x.sign))
        sides.append(build_diagram(raw))
    return sides[0], sides[1]


def _prime_factors(d: OrientedDiagram) -> list[OrientedDiagram]:
    if d.n == 0:
        return [d]
    edges = sorted(d.heads)
    for idx, e in enumerate(edges):
        fe = {d.left_face(e), d.right_face(e)}
        if len(fe) != 2:
            continue
        for f in edges[idx + 1:]:
            if {d.left_face(f), d.right_face(f)} != fe:
                continue
            split = _split_along(d, e, f)
            if split is None:
                continue
            return _prime_factors(split[0]) + _prime_factors(split[1])
    return [d]


def _removable_bigon(d: OrientedDiagram, f: int) -> bool:
    # a 2-gon in the R2 sense: one side passes over at both corners
    walk = d.faces[f]
    if walk[0][0] == walk[1][0]:
        return False
    g = d.face_edges(f)[0]
    return (d.tails[g][1] % 2 == 1) == (d.heads[g][1] % 2 == 1)


def structural_report(d: OrientedDiagram) -> StructuralReport:
    nug = _nugatory(d)
    reduced = not nug
    bigon = any(_removable_bigon(d, f) for f, w in enumerate(d.faces) if len(w) == 2)
    factors: list[OrientedDiagram] = []
    if d.is_connected:
        factors = _prime_factors(d)
    else:
        for piece in split_pieces(d):
            factors.extend(_prime_factors(piece))
    return StructuralReport(
        nugatory=nug,
        reduced=reduced,
        r2_reduced=reduced and not bigon,
        connected=d.is_connected,
        prime_factors=tuple(factors),
    )


def split_pieces(d: OrientedDiagram) -> list[OrientedDiagram]:
    """The connected pieces of the projection, crossingless circles last."""
    pieces = []
    for comp in d.projection_components:
        raw = [(*d.crossings[i].labels, d.crossings[i].sign) for i in sorted(comp)]
        pieces.append(build_diagram(raw))
    pieces.extend(unknot(1) for _ in range(d.unknot_circles))
    return pieces


# -- global rewrites -------------------------------------------------------------


def _raw(d: OrientedDiagram) -> list[tuple[int, int, int, int, int]]:
    return [(*x.labels, x.sign) for x in d.crossings]


def _reorient(labels: Sequence[int], ins: set[int], under: tuple[int, int]) -> tuple[int, int, int, int, int]:
    """Rotate a crossing so it starts at the incoming under position."""
    start = under[0] if under[0] in ins else under[1]
    labs = [labels[(start + k) % 4] for k in range(4)]
    over_in = next(p for p in ins if p not in under)
    rel = (over_in - start) % 4
    return (*labs, 1 if rel == 1 else -1)


def mirror(d: OrientedDiagram) -> OrientedDiagram:
    """Swap over and under at every crossing."""
    raw = []
    for x in d.crossings:
        ins = {0, x.over_in_pos}
        raw.append(_reorient(x.labels, ins, (1, 3)))
    return build_diagram(raw, d.unknot_circles)


def reverse_components(d: OrientedDiagram, which: Iterable[int]) -> OrientedDiagram:
    """Reverse the orientation of the listed components (indices into ``components``)."""
    which = set(which)
    flip_edges = {e for k in which for e in d.components[k]}
    raw = []
    for x in d.crossings:
        ins = set()
        for p in x.incoming:
            q = (p + 2) % 4
            if x.labels[p] in flip_edges:
                ins.add(q)
            else:
                ins.add(p)
        raw.append(_reorient(x.labels, ins, (0, 2)))
    return build_diagram(raw, d.unknot_circles)


def relabel(d: OrientedDiagram, mapping: Mapping[int, int]) -> OrientedDiagram:
    """Apply a bijection of edge labels (it must keep each component consecutive)."""
    crossings = tuple(
        Crossing(*(mapping[e] for e in x.labels), x.sign) for x in d.crossings
    )
    return OrientedDiagram(crossings, d.unknot_circles)


def disjoint_union(a: OrientedDiagram, b: OrientedDiagram) -> OrientedDiagram:
    off = 2 * a.n
    raw = _raw(a) + [(p + off, q + off, r + off, s + off, sg) for p, q, r, s, sg in _raw(b)]
    return build_diagram(raw, a.unknot_circles + b.unknot_circles)


def connected_sum(a: OrientedDiagram, b: OrientedDiagram, ea: int | None = None, eb: int | None = None) -> OrientedDiagram:
    """Join edge ``ea`` of ``a`` with edge ``eb`` of ``b`` by a band.

    A crossingless circle may stand in for either side (``ea``/``eb`` is then
    ignored and one circle is consumed).
    """
    from .errors import BadSite

    if a.n == 0 or b.n == 0:
        if a.n == 0 and a.unknot_circles == 0 or b.n == 0 and b.unknot_circles == 0:
            raise BadSite("connected sum needs a component on each side")
        if a.n == 0:
            return OrientedDiagram(b.crossings, b.unknot_circles + a.unknot_circles - 1, _checked=True)
        return OrientedDiagram(a.crossings, a.unknot_circles + b.unknot_circles - 1, _checked=True)
    ea = 1 if ea is None else ea
    eb = 1 if eb is None else eb
    if ea not in a.heads or eb not in b.heads:
        raise BadSite(f"no edge {ea} in first diagram or {eb} in second")
    off = 2 * a.n
    raw_a = _raw(a)
    raw_b = [(p + off, q + off, r + off, s + off, sg) for p, q, r, s, sg in _raw(b)]
    ebb = eb + off
    # a's edge ea now ends where b's edge eb ended, and vice versa
    hi, hp = b.heads[eb]
    row = list(raw_b[hi])
    row[hp] = ea
    raw_b[hi] = tuple(row)
    hi, hp = a.heads[ea]
    row = list(raw_a[hi])
    row[hp] = ebb
    raw_a[hi] = tuple(row)
    return build_diagram(raw_a + raw_b, a.unknot_circles + b.unknot_circles)
