"""Diagram rewrites: crossing changes, smoothings, Reidemeister moves, loop
reduction r(D, P), spines and the descending resolution.

Every rewrite that removes crossings goes through :func:`_surgery`, which
reroutes strands through the removed crossings and relabels the result by
traversal.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import Literal

from .diagram import Crossing, OrientedDiagram, build_with_map
from .errors import NotSelfCrossing, SiteNotApplicable, UnknownComponent, UnknownCrossing

__all__ = [
    "change_crossing",
    "smooth",
    "split",
    "r_reduce",
    "loops_at",
    "spine",
    "Site",
    "reidemeister",
    "descending_resolution",
]

Routes = Mapping[int, Mapping[int, int | None]]


def _check_crossing(d: OrientedDiagram, p: int) -> None:
    if not isinstance(p, int) or not 0 <= p < d.n:
        raise UnknownCrossing(f"no crossing {p!r} in a diagram with {d.n} crossings")


def _surgery(d: OrientedDiagram, removed: Routes, circles_delta: int = 0) -> tuple[OrientedDiagram, dict[int, int]]:
    """Delete crossings, routing each incoming position to an outgoing one.

    ``removed[i][p]`` is the position through which the strand entering
    crossing ``i`` at ``p`` leaves, or ``None`` if that strand is erased.
    Returns the relabelled diagram and a map from every surviving old edge
    label to its new label.
    """
    heads = d.heads
    survivors = [i for i in range(d.n) if i not in removed]
    new_pos: dict[tuple[int, int], int] = {}
    chain_of: dict[int, int] = {}
    for i in survivors:
        x = d.crossings[i]
        for p in x.incoming:
            q = (p + 2) % 4
            lab = x.labels[q]
            new_pos[(i, q)] = lab
            e = lab
            while True:
                chain_of[e] = lab
                j, pj = heads[e]
                if j not in removed:
                    new_pos[(j, pj)] = lab
                    break
                r = removed[j][pj]
                if r is None:
                    raise AssertionError(f"surviving strand runs into erased strand at crossing {j}")
                e = d.crossings[j].labels[r]
    # leftover closed chains through removed crossings become free circles
    circles = 0
    for e in heads:
        if e in chain_of:
            continue
        j, pj = heads[e]
        if removed.get(j, {}).get(pj, 0) is None:
            continue
        circles += 1
        cur = e
        while cur not in chain_of:
            chain_of[cur] = -1
            j, pj = heads[cur]
            r = removed[j][pj]
            if r is None:
                raise AssertionError("free chain runs into an erased strand")
            cur = d.crossings[j].labels[r]
    raw = []
    for i in survivors:
        x = d.crossings[i]
        raw.append((*(new_pos[(i, q)] for q in range(4)), x.sign))
    out, relab = build_with_map(raw, d.unknot_circles + circles + circles_delta)
    mapping = {e: relab[c] for e, c in chain_of.items() if c != -1}
    return out, mapping


def change_crossing(d: OrientedDiagram, p: int) -> OrientedDiagram:
    """Swap over and under at crossing ``p``; labels are untouched."""
    _check_crossing(d, p)
    x = d.crossings[p]
    if x.sign > 0:
        # old over strand b -> d becomes the under strand
        nx = Crossing(x.b, x.c, x.d, x.a, -1)
    else:
        nx = Crossing(x.d, x.a, x.b, x.c, 1)
    crossings = list(d.crossings)
    crossings[p] = nx
    return OrientedDiagram(tuple(crossings), d.unknot_circles, _checked=True)


def smooth(d: OrientedDiagram, p: int) -> OrientedDiagram:
    """Orientation-respecting smoothing of crossing ``p``."""
    _check_crossing(d, p)
    x = d.crossings[p]
    routes = {p: {q: x.seifert_out_pos(q) for q in x.incoming}}
    return _surgery(d, routes)[0]


# A-splitting joins (a, d) and (b, c); B-splitting joins (a, b) and (c, d)
_SPLIT_PAIRS = {"A": {0: 3, 3: 0, 1: 2, 2: 1}, "B": {0: 1, 1: 0, 2: 3, 3: 2}}


def split(d: OrientedDiagram, p: int, kind: Literal["A", "B"]) -> OrientedDiagram:
    """Unoriented splitting at ``p``, so that <D> = A<split A> + A^-1<split B>.

    One of the two splittings does not respect the orientation.  The result
    is reoriented by tracing each component from its smallest surviving leg,
    which the bracket cannot see; signs of the surviving crossings are
    recomputed from the new directions.
    """
    _check_crossing(d, p)
    if kind not in _SPLIT_PAIRS:
        raise SiteNotApplicable(f"splitting must be 'A' or 'B', not {kind!r}")
    pair = _SPLIT_PAIRS[kind]

    def other_end(i: int, k: int) -> tuple[int, int]:
        e = d.crossings[i].labels[k]
        h, t = d.heads[e], d.tails[e]
        return t if h == (i, k) else h

    used_at_p: set[int] = set()

    def arrive(i: int, k: int) -> tuple[int, int]:
        # leave crossing i through leg k; return the leg of the next crossing entered
        j, m = other_end(i, k)
        while j == p:
            used_at_p.update((m, pair[m]))
            j, m = other_end(p, pair[m])
        return j, m

    labels: dict[tuple[int, int], int] = {}
    entered: set[tuple[int, int]] = set()
    fresh = 0
    for i in range(d.n):
        if i == p:
            continue
        for k0 in range(4):
            if (i, k0) in labels:
                continue
            # (i, k0) is the exit leg of an untraced strand
            i1, k1 = i, k0
            while (i1, k1) not in labels:
                fresh += 1
                j, m = arrive(i1, k1)
                labels[(i1, k1)] = labels[(j, m)] = fresh
                entered.add((j, m))
                i1, k1 = j, (m + 2) % 4
    raw = []
    for i in range(d.n):
        if i == p:
            continue
        under = 0 if (i, 0) in entered else 2
        over = 1 if (i, 1) in entered else 3
        legs = [labels[(i, (under + r) % 4)] for r in range(4)]
        raw.append((*legs, 1 if (over - under) % 4 == 1 else -1))
    circles = d.unknot_circles
    free = set(range(4)) - used_at_p
    while free:
        m = min(free)
        while m in free:
            free.discard(m)
            free.discard(pair[m])
            m = other_end(p, pair[m])[1]
        circles += 1
    return build_with_map(raw, circles)[0]


def loops_at(d: OrientedDiagram, p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The two loops at a self-crossing, as edge label sequences.

    The first loop leaves ``p`` along the under-strand and returns along the
    over-strand; the second does the reverse.
    """
    _check_crossing(d, p)
    if not d.is_self_crossing(p):
        raise NotSelfCrossing(f"crossing {p} joins two different components")
    x = d.crossings[p]
    over_in = x.over_in_pos
    out = []
    for start_pos, end_pos in ((2, over_in), ((over_in + 2) % 4, 0)):
        seq = [x.labels[start_pos]]
        while d.heads[seq[-1]] != (p, end_pos):
            seq.append(d.successor(seq[-1]))
        out.append(tuple(seq))
    return out[0], out[1]


def _loop_crossings(d: OrientedDiagram, p: int, loop: Sequence[int]) -> set[int]:
    return {d.heads[e][0] for e in loop} - {p}


def r_reduce(d: OrientedDiagram, p: int, loop: int | None = None) -> OrientedDiagram:
    """r(D, P): erase one loop at the self-crossing ``p`` and smooth ``p``.

    Args:
        d: the diagram.
        p: a self-crossing.
        loop: an edge label on the loop to erase.  By default the loop
            meeting fewer crossings is erased, ties going to the loop that
            carries the smaller edge label.

    Returns:
        The reduced diagram, relabelled by traversal.
    """
    return _r_reduce_map(d, p, loop)[0]


def _r_reduce_map(d: OrientedDiagram, p: int, loop: int | None):
    first, second = loops_at(d, p)
    if loop is None:
        key = lambda lp: (len(_loop_crossings(d, p, lp)), min(lp))
        chosen = min((first, second), key=key)
    elif loop in first:
        chosen = first
    elif loop in second:
        chosen = second
    else:
        raise SiteNotApplicable(f"edge {loop} is on neither loop at crossing {p}")
    x = d.crossings[p]
    over_in = x.over_in_pos
    if chosen is first:
        routes: dict[int, dict[int, int | None]] = {p: {0: (over_in + 2) % 4, over_in: None}}
    else:
        routes = {p: {over_in: 2, 0: None}}
    for e in chosen:
        j, pj = d.heads[e]
        if j != p:
            routes.setdefault(j, {})[pj] = None
    for j, r in routes.items():
        if j == p:
            continue
        for q in d.crossings[j].incoming:
            r.setdefault(q, (q + 2) % 4)
    return _surgery(d, routes)


def spine(d: OrientedDiagram, component: int, start: int | None = None) -> OrientedDiagram:
    """Spine of a component traced from ``start``.

    Walking from ``start``, the first self-crossing met is replaced by
    r(D, P) erasing the loop that follows it, and the walk goes on from
    there until the component has no self-crossings left.
    """
    if not 0 <= component < len(d.components):
        raise UnknownComponent(f"no component {component!r} with crossings")
    comp = d.components[component]
    tracked = comp[0] if start is None else start
    if tracked not in comp:
        raise UnknownComponent(f"edge {start} is not on component {component}")
    while True:
        k = d.component_of[tracked]
        hit = None
        e = tracked
        for _ in range(len(d.components[k])):
            j, pj = d.heads[e]
            if d.is_self_crossing(j):
                hit = (e, j, pj)
                break
            e = d.successor(e)
        if hit is None:
            return d
        e, j, pj = hit
        loop_edge = d.crossings[j].labels[(pj + 2) % 4]
        d, mapping = _r_reduce_map(d, j, loop_edge)
        if e not in mapping:
            return d
        tracked = mapping[e]


# -- Reidemeister moves ------------------------------------------------------


@dataclass(frozen=True)
class Site:
    """Location of a Reidemeister move.

    Attributes:
        edge: edge to kink (R1+; None for a crossingless circle) or the
            moving edge (R2+).
        other_edge: the edge pushed across (R2+).
        face: face shared by both edges (R2+) or the bigon (R2-).
        crossing: the kink crossing (R1-).
        side: which side of ``edge`` the kink loop lies on (R1+).
        sign: sign of the new kink crossing (R1+).
        over: which strand goes over in R2+.
    """

    edge: int | None = None
    other_edge: int | None = None
    face: int | None = None
    crossing: int | None = None
    side: Literal["left", "right"] = "left"
    sign: int = 1
    over: Literal["edge", "other"] = "edge"


def _raw(d: OrientedDiagram) -> list[list[int]]:
    return [[*x.labels, x.sign] for x in d.crossings]


def _r1_add(d: OrientedDiagram, site: Site) -> OrientedDiagram:
    if site.sign not in (1, -1) or site.side not in ("left", "right"):
        raise SiteNotApplicable("R1+ needs side left/right and sign +1/-1")
    top = 2 * d.n
    raw = _raw(d)
    circles = d.unknot_circles
    if site.edge is None:
        if circles == 0:
            raise SiteNotApplicable("no crossingless circle to kink")
        circles -= 1
        e1 = e2 = top + 1
        loop = top + 2
    else:
        if site.edge not in d.heads:
            raise SiteNotApplicable(f"no edge {site.edge}")
        e1, loop, e2 = site.edge, top + 1, top + 2
        hi, hp = d.heads[site.edge]
        raw[hi][hp] = e2
    first_under = (site.side == "left") == (site.sign > 0)
    if site.side == "left":
        row = (e1, loop, loop, e2, 1) if first_under else (loop, loop, e2, e1, -1)
    else:
        row = (e1, e2, loop, loop, -1) if first_under else (loop, e1, e2, loop, 1)
    raw.append(list(row))
    return build_with_map([tuple(r) for r in raw], circles)[0]


def _r1_remove(d: OrientedDiagram, site: Site) -> OrientedDiagram:
    p = site.crossing
    if p is None:
        raise SiteNotApplicable("R1- needs a crossing")
    _check_crossing(d, p)
    labs = d.crossings[p].labels
    if len(set(labs)) == 4:
        raise SiteNotApplicable(f"crossing {p} is not a kink")
    routes = {p: {q: (q + 2) % 4 for q in d.crossings[p].incoming}}
    return _surgery(d, routes)[0]


_CLOCKWISE = ("N", "E", "S", "W")


def _tuple_from_legs(legs: dict[str, tuple[int, bool]], under: set[str]) -> tuple[int, int, int, int, int]:
    start = next(k for k, g in enumerate(_CLOCKWISE) if g in under and legs[g][1])
    order = [_CLOCKWISE[(start + k) % 4] for k in range(4)]
    over_in = next(k for k, g in enumerate(order) if g not in under and legs[g][1])
    return (*(legs[g][0] for g in order), 1 if over_in == 1 else -1)


def _r2_add(d: OrientedDiagram, site: Site) -> OrientedDiagram:
    e, f, face = site.edge, site.other_edge, site.face
    if e is None or f is None or face is None or e == f:
        raise SiteNotApplicable("R2+ needs two distinct edges and a face")
    if e not in d.heads or f not in d.heads:
        raise SiteNotApplicable("unknown edge")
    if face not in (d.left_face(e), d.right_face(e)) or face not in (d.left_face(f), d.right_face(f)):
        raise SiteNotApplicable(f"edges {e} and {f} do not share face {face}")
    # frame: the face lies north of e and south of f; the finger from e goes north
    e_east = d.left_face(e) == face
    f_east = d.right_face(f) == face
    top = 2 * d.n
    em, e2, fm, f2 = top + 1, top + 2, top + 3, top + 4
    raw = _raw(d)
    hi, hp = d.heads[e]
    raw[hi][hp] = e2
    hi, hp = d.heads[f]
    raw[hi][hp] = f2
    west: dict[str, tuple[int, bool]] = {}
    east: dict[str, tuple[int, bool]] = {}
    e_first, e_second = (west, east) if e_east else (east, west)
    e_first["S"], e_first["N"] = (e, True), (em, False)
    e_second["N"], e_second["S"] = (em, True), (e2, False)
    f_first, f_second = (west, east) if f_east else (east, west)
    f_in, f_out = ("W", "E") if f_east else ("E", "W")
    f_first[f_in], f_first[f_out] = (f, True), (fm, False)
    f_second[f_in], f_second[f_out] = (fm, True), (f2, False)
    under = {"W", "E"} if site.over == "edge" else {"N", "S"}
    for legs in (west, east):
        raw.append(list(_tuple_from_legs(legs, under)))
    return build_with_map([tuple(r) for r in raw], d.unknot_circles)[0]


def _r2_remove(d: OrientedDiagram, site: Site) -> OrientedDiagram:
    f = site.face
    if f is None or not 0 <= f < len(d.faces):
        raise SiteNotApplicable("R2- needs a bigon face")
    walk = d.faces[f]
    if len(walk) != 2 or walk[0][0] == walk[1][0]:
        raise SiteNotApplicable(f"face {f} is not a bigon between two crossings")
    g = d.face_edges(f)[0]
    t_over = d.tails[g][1] % 2 == 1
    h_over = d.heads[g][1] % 2 == 1
    if t_over != h_over:
        raise SiteNotApplicable(f"bigon {f} does not have one strand over at both crossings")
    routes = {i: {q: (q + 2) % 4 for q in d.crossings[i].incoming} for i, _ in walk}
    return _surgery(d, routes)[0]


_MOVES = {
    "R1+": _r1_add,
    "R1-": _r1_remove,
    "R2+": _r2_add,
    "R2-": _r2_remove,
}


def reidemeister(d: OrientedDiagram, move: str, site: Site) -> OrientedDiagram:
    """Apply ``R1+``, ``R1-``, ``R2+`` or ``R2-`` at ``site``."""
    key = move.replace("−", "-")
    if key not in _MOVES:
        raise SiteNotApplicable(f"unknown move {move!r}")
    return _MOVES[key](d, site)


def descending_resolution(
    d: OrientedDiagram,
    order: Sequence[int] | None = None,
    basepoints: Mapping[int, int] | None = None,
) -> OrientedDiagram:
    """Choose crossings so each is first met as an over-crossing.

    Components are traversed in ``order`` (indices into ``d.components``),
    each from its basepoint edge (default: its first edge).
    """
    order = list(range(len(d.components))) if order is None else list(order)
    if sorted(order) != list(range(len(d.components))):
        raise UnknownComponent("order must list every component once")
    basepoints = dict(basepoints or {})
    met: set[int] = set()
    flips: list[int] = []
    for k in order:
        comp = d.components[k]
        start = basepoints.get(k, comp[0])
        if start not in comp:
            raise UnknownComponent(f"basepoint {start} is not on component {k}")
        e = start
        for _ in range(len(comp)):
            i, p = d.heads[e]
            if i not in met:
                met.add(i)
                if p == 0:
                    flips.append(i)
            e = d.successor(e)
    out = d
    for i in flips:
        out = change_crossing(out, i)
    return out
