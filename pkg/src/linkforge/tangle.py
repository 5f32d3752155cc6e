"""Two-string tangles, their closures, and named diagram families.

Twist boxes follow the reversed Conway convention used throughout: ``T(n)`` is
a vertical column of ``|n|`` crossings, with the over strand along the
NW-SE diagonal when ``n > 0`` and along the SW-NE diagonal when ``n < 0``.
``T(1/n)`` is ``R(T(n))``.  Sums place tangles side by side, ``R`` rotates by a
quarter turn counterclockwise, and ``V``/``H`` are the half turns about the
vertical and horizontal axes (a mirror in the plane followed by swapping every
crossing).

Rendering works on a small planar graph: crossings list their four incident
edges clockwise, and each boundary point holds one edge.  Closures join the
boundary points and orientations are chosen per component afterwards.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from typing import Literal, Union

from .diagram import OrientedDiagram, build_diagram, connected_sum, disjoint_union, reverse_components
from .errors import BadSite, InvalidVerticalTwist, OrientationMismatch, ParityError, TangleError

__all__ = [
    "TwistBox",
    "VerticalTwist",
    "Sum",
    "Rot",
    "VSym",
    "HSym",
    "Primitive",
    "TangleExpr",
    "parse_tangle",
    "render",
    "to_diagram",
    "from_text",
    "pretzel",
    "twist_knot",
    "torus2",
    "combine",
    "braid_closure",
    "make_positive",
]

SLOTS = ("NW", "NE", "SW", "SE")
Closure = Literal["N", "D", "X+", "X-"]


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class TwistBox:
    n: int

    def __str__(self) -> str:
        return f"T({self.n})"


@dataclass(frozen=True)
class VerticalTwist:
    n: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InvalidVerticalTwist(f"T(1/{self.n}) is not allowed; use n >= 2 (T(1/1) differs from T(1))")

    def __str__(self) -> str:
        return f"T(1/{self.n})"


@dataclass(frozen=True)
class Sum:
    left: TangleExpr
    right: TangleExpr

    def __str__(self) -> str:
        return f"{self.left}+{self.right}"


@dataclass(frozen=True)
class Rot:
    inner: TangleExpr

    def __str__(self) -> str:
        return f"R({self.inner})"


@dataclass(frozen=True)
class VSym:
    inner: TangleExpr

    def __str__(self) -> str:
        return f"V({self.inner})"


@dataclass(frozen=True)
class HSym:
    inner: TangleExpr

    def __str__(self) -> str:
        return f"H({self.inner})"


@dataclass(frozen=True)
class Primitive:
    """A hand-made fragment.

    ``crossings`` holds ``(legs, over)`` pairs: four edge ids read clockwise
    and ``over`` = 0 if legs 0 and 2 form the over strand, else 1.  ``ends``
    maps each boundary point to the edge ending there.
    """

    crossings: tuple[tuple[tuple[int, int, int, int], int], ...]
    ends: tuple[tuple[str, int], ...]
    loops: int = 0


TangleExpr = Union[TwistBox, VerticalTwist, Sum, Rot, VSym, HSym, Primitive]


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(T\(|[RVH]\(|\(|\)|\+|,|/|-?\d+)")


def parse_tangle(text: str) -> tuple[TangleExpr, Closure | None]:
    """Parse ``[N:|D:|X+:|X-:] expr``.

    Grammar: ``T(n)``, ``T(1/n)``, ``T(a,b,...)`` for ``T(a)+T(b)+...``,
    ``R(e)``, ``V(e)``, ``H(e)`` and ``e + e``.
    """
    text = text.strip()
    closure = None
    m = re.match(r"(N|D|X\+|X-)\s*:", text)
    if m:
        closure = m.group(1)
        text = text[m.end():]
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        t = _TOKEN.match(text, pos)
        if t is None:
            raise TangleError(f"unexpected {text[pos:pos + 10]!r} in tangle expression")
        tokens.append(t.group(1))
        pos = t.end()
    expr, k = _parse_sum(tokens, 0)
    if k != len(tokens):
        raise TangleError(f"trailing tokens {tokens[k:]}")
    return expr, closure


def _parse_sum(tokens, k):
    left, k = _parse_atom(tokens, k)
    while k < len(tokens) and tokens[k] == "+":
        right, k = _parse_atom(tokens, k + 1)
        left = Sum(left, right)
    return left, k


def _expect(tokens, k, tok):
    if k >= len(tokens) or tokens[k] != tok:
        got = tokens[k] if k < len(tokens) else "end of input"
        raise TangleError(f"expected {tok!r}, got {got!r}")
    return k + 1


def _parse_int(tokens, k):
    if k >= len(tokens) or not re.fullmatch(r"-?\d+", tokens[k]):
        raise TangleError("expected an integer")
    return int(tokens[k]), k + 1


def _parse_atom(tokens, k):
    if k >= len(tokens):
        raise TangleError("unexpected end of tangle expression")
    tok = tokens[k]
    if tok == "T(":
        a, k = _parse_int(tokens, k + 1)
        if k < len(tokens) and tokens[k] == "/":
            if a != 1:
                raise TangleError("only T(1/n) fractions are supported")
            n, k = _parse_int(tokens, k + 1)
            k = _expect(tokens, k, ")")
            return VerticalTwist(n), k
        parts = [TwistBox(a)]
        while k < len(tokens) and tokens[k] == ",":
            b, k = _parse_int(tokens, k + 1)
            parts.append(TwistBox(b))
        k = _expect(tokens, k, ")")
        expr = parts[0]
        for p in parts[1:]:
            expr = Sum(expr, p)
        return expr, k
    if tok in ("R(", "V(", "H("):
        inner, k = _parse_sum(tokens, k + 1)
        k = _expect(tokens, k, ")")
        return {"R(": Rot, "V(": VSym, "H(": HSym}[tok](inner), k
    if tok == "(":
        inner, k = _parse_sum(tokens, k + 1)
        return inner, _expect(tokens, k, ")")
    raise TangleError(f"unexpected token {tok!r}")


# -- fragments ---------------------------------------------------------------


@dataclass
class _Frag:
    crossings: list[list] = field(default_factory=list)  # [legs list, over]
    ends: dict[str, int] = field(default_factory=dict)
    loops: int = 0


class _Ids:
    def __init__(self) -> None:
        self.n = 0

    def __call__(self) -> int:
        self.n += 1
        return self.n


def _rename(frag: _Frag, old: int, new: int) -> None:
    for c in frag.crossings:
        c[0] = [new if e == old else e for e in c[0]]
    for s, e in frag.ends.items():
        if e == old:
            frag.ends[s] = new


def _column(n: int, ids: _Ids) -> _Frag:
    frag = _Frag()
    if n == 0:
        left, right = ids(), ids()
        frag.ends = {"NW": left, "SW": left, "NE": right, "SE": right}
        return frag
    over = 0 if n > 0 else 1
    top = (ids(), ids())
    frag.ends["NW"], frag.ends["NE"] = top
    cur = top
    for _ in range(abs(n)):
        bottom = (ids(), ids())
        # clockwise from NW: NW, NE, SE, SW
        frag.crossings.append([[cur[0], cur[1], bottom[1], bottom[0]], over])
        cur = bottom
    frag.ends["SW"], frag.ends["SE"] = cur
    return frag


def _glue(frag: _Frag, e1: int, e2: int) -> None:
    """Join two boundary edges into one."""
    if e1 == e2:
        frag.loops += 1
        for s in [s for s, e in frag.ends.items() if e == e1]:
            del frag.ends[s]
        return
    _rename(frag, e2, e1)


def _render(t: TangleExpr, ids: _Ids) -> _Frag:
    if isinstance(t, TwistBox):
        return _column(t.n, ids)
    if isinstance(t, VerticalTwist):
        return _render(Rot(TwistBox(t.n)), ids)
    if isinstance(t, Sum):
        a = _render(t.left, ids)
        b = _render(t.right, ids)
        frag = _Frag(a.crossings + b.crossings, {}, a.loops + b.loops)
        joins = [(a.ends["NE"], b.ends["NW"]), (a.ends["SE"], b.ends["SW"])]
        frag.ends = {"NW": a.ends["NW"], "SW": a.ends["SW"], "NE": b.ends["NE"], "SE": b.ends["SE"]}
        # temporary slots keep track of the inner joins while renaming
        frag.ends["_1"], frag.ends["_2"] = joins[0]
        frag.ends["_3"], frag.ends["_4"] = joins[1]
        for x, y in (("_1", "_2"), ("_3", "_4")):
            e1, e2 = frag.ends.pop(x), frag.ends.pop(y)
            if e1 == e2:
                frag.loops += 1
            else:
                _rename(frag, e2, e1)
        return frag
    if isinstance(t, Rot):
        inner = _render(t.inner, ids)
        move = {"NW": "SW", "SW": "SE", "SE": "NE", "NE": "NW"}
        inner.ends = {move[s]: e for s, e in inner.ends.items()}
        return inner
    if isinstance(t, (VSym, HSym)):
        inner = _render(t.inner, ids)
        swap = {"NW": "NE", "NE": "NW", "SW": "SE", "SE": "SW"} if isinstance(t, VSym) else {
            "NW": "SW", "SW": "NW", "NE": "SE", "SE": "NE"}
        inner.ends = {swap[s]: e for s, e in inner.ends.items()}
        for c in inner.crossings:
            l0, l1, l2, l3 = c[0]
            # mirror reverses the cyclic order; the half turn also swaps over/under
            c[0] = [l0, l3, l2, l1]
            c[1] = 1 - c[1]
        return inner
    if isinstance(t, Primitive):
        offset = ids.n
        used = set()
        frag = _Frag(loops=t.loops)
        for legs, over in t.crossings:
            frag.crossings.append([[e + offset for e in legs], over])
            used.update(legs)
        frag.ends = {s: e + offset for s, e in t.ends}
        used.update(e for _, e in t.ends)
        ids.n = offset + max(used, default=0)
        if set(frag.ends) != set(SLOTS):
            raise TangleError("a primitive must define all four boundary points")
        return frag
    raise TangleError(f"not a tangle expression: {t!r}")


def render(t: TangleExpr) -> _Frag:
    """Render to a fragment with boundary points NW, NE, SW, SE."""
    return _render(t, _Ids())


# -- closures ----------------------------------------------------------------


def _close(frag: _Frag, closure: str, ids: _Ids):
    """Closed graph: crossings and beads (one per boundary point)."""
    crossings = [list(c) for c in frag.crossings]
    beads: dict[str, tuple[int, int]] = {}
    outer = {s: ids() for s in SLOTS}
    for s in SLOTS:
        beads[s] = (frag.ends[s], outer[s])
    extra = None
    if closure == "N":
        pairs = [("NW", "NE"), ("SW", "SE")]
    elif closure == "D":
        pairs = [("NW", "SW"), ("NE", "SE")]
    elif closure in ("X+", "X-"):
        pairs = []
        # one crossing outside the box: legs clockwise run to SW, SE, NE, NW
        crossings.append([[outer["SW"], outer["SE"], outer["NE"], outer["NW"]], 0])
        extra = len(crossings) - 1
    else:
        raise TangleError(f"unknown closure {closure!r}")
    for a, b in pairs:
        # unify the two outer edges
        ea, eb = outer[a], outer[b]
        beads[b] = (beads[b][0], ea)
        outer[b] = ea
    return crossings, beads, extra


def _components(crossings, beads):
    """Trace closed strands as lists of (kind, node, entry leg)."""
    ends: dict[int, list] = {}
    for i, (legs, _) in enumerate(crossings):
        for p, e in enumerate(legs):
            ends.setdefault(e, []).append(("x", i, p))
    for s, (inner, out) in beads.items():
        ends.setdefault(inner, []).append(("b", s, "inner"))
        ends.setdefault(out, []).append(("b", s, "outer"))
    for e, lst in ends.items():
        if len(lst) != 2:
            raise AssertionError(f"edge {e} has {len(lst)} ends")

    def through(end):
        kind, node, leg = end
        if kind == "x":
            out_leg = (leg + 2) % 4
            return ("x", node, out_leg), crossings[node][0][out_leg]
        inner, out = beads[node]
        return (("b", node, "outer"), out) if leg == "inner" else (("b", node, "inner"), inner)

    seen: set[int] = set()
    comps = []
    for e0 in sorted(ends):
        if e0 in seen:
            continue
        steps = []
        e, arrive = e0, ends[e0][1]
        while True:
            seen.add(e)
            steps.append(arrive)
            leave, e = through(arrive)
            a, b = ends[e]
            arrive = b if a == leave else a
            if e == e0:
                break
        comps.append(steps)
    return comps


def to_diagram(
    t: TangleExpr | str,
    closure: Closure = "N",
    orientation: Mapping[str, Literal["in", "out"]] | None = None,
) -> OrientedDiagram:
    """Close a tangle and orient it.

    Args:
        t: the tangle (an AST or expression text).
        closure: ``N``, ``D``, ``X+`` or ``X-``.
        orientation: optional boundary point -> ``"in"`` / ``"out"``, the
            direction of the strand there relative to the tangle.  Components
            not pinned this way enter the tangle at the first boundary point
            among NW, SE, SW, NE that they pass; closed loops inside the
            tangle keep their traced direction.

    Raises:
        OrientationMismatch: the requested directions cannot be realised.
    """
    if isinstance(t, str):
        t, parsed = parse_tangle(t)
        closure = parsed or closure
    ids = _Ids()
    frag = _render(t, ids)
    crossings, beads, extra = _close(frag, closure, ids)
    comps = _components(crossings, beads)
    orientation = dict(orientation or {})
    bad = set(orientation) - set(SLOTS)
    if bad or any(v not in ("in", "out") for v in orientation.values()):
        raise OrientationMismatch(f"bad orientation request {orientation}")
    priority = {"NW": 0, "SE": 1, "SW": 2, "NE": 3}
    oriented = []
    for steps in comps:
        # forward traversal enters the tangle at a bead when it arrives on the outer leg
        forward_in = {node: leg == "outer" for kind, node, leg in steps if kind == "b"}
        wanted = None
        for s, want in orientation.items():
            if s in forward_in:
                fwd = forward_in[s] == (want == "in")
                if wanted is not None and wanted != fwd:
                    raise OrientationMismatch(f"boundary directions {orientation} conflict on one strand")
                wanted = fwd
        if wanted is None:
            if forward_in:
                first = min(forward_in, key=priority.__getitem__)
                wanted = forward_in[first]
            else:
                wanted = True
        oriented.append(steps if wanted else _reverse_steps(steps))
    return _assemble(crossings, oriented, frag.loops, extra, closure)


def _reverse_steps(steps):
    out = []
    for kind, node, leg in reversed(steps):
        if kind == "x":
            out.append(("x", node, (leg + 2) % 4))
        else:
            out.append(("b", node, "outer" if leg == "inner" else "inner"))
    return out


def _assemble(crossings, comps, loops, extra, closure) -> OrientedDiagram:
    labels: dict[tuple[int, int], int] = {}
    incoming: dict[int, set[int]] = {}
    free = loops
    nxt = 0
    for steps in comps:
        passes = [(node, leg) for kind, node, leg in steps if kind == "x"]
        if not passes:
            free += 1
            continue
        base = nxt
        for k, (i, p) in enumerate(passes):
            # edge k runs from pass k to pass k+1
            labels[(i, (p + 2) % 4)] = base + k + 1
            j, q = passes[(k + 1) % len(passes)]
            labels[(j, q)] = base + k + 1
            incoming.setdefault(i, set()).add(p)
        nxt = base + len(passes)
    raw = []
    for i, (legs, over) in enumerate(crossings):
        ins = incoming[i]
        over_line = {0, 2} if over == 0 else {1, 3}
        if i == extra:
            want = 1 if closure == "X+" else -1
            over_line = next(c for c in ({0, 2}, {1, 3}) if _sign(ins, c) == want)
        u = next(p for p in ins if p not in over_line)
        lab = [labels[(i, (u + k) % 4)] for k in range(4)]
        raw.append((*lab, _sign(ins, over_line)))
    return build_diagram(raw, free)


def _sign(ins: set[int], over_line: set[int]) -> int:
    u = next(p for p in ins if p not in over_line)
    o = next(p for p in ins if p in over_line)
    return 1 if (o - u) % 4 == 1 else -1


def from_text(text: str) -> OrientedDiagram:
    """Diagram from ``closure:expr`` text (closure defaults to N)."""
    expr, closure = parse_tangle(text)
    return to_diagram(expr, closure or "N")


# -- families ----------------------------------------------------------------


def make_positive(d: OrientedDiagram) -> OrientedDiagram:
    """Reverse components to maximise the number of positive crossings.

    Ties keep the earliest choice in lexicographic order of reversal sets.
    """
    k = len(d.components)
    best = d
    best_pos = sum(x.sign > 0 for x in d.crossings)
    for r in range(1, k):
        for which in itertools.combinations(range(1, k), r):
            cand = reverse_components(d, which)
            pos = sum(x.sign > 0 for x in cand.crossings)
            if pos > best_pos:
                best, best_pos = cand, pos
    return best


def pretzel(p1: int, p2: int, p3: int, kind: Literal["knot-odd", "link-even"] | None = None) -> OrientedDiagram:
    """Pretzel diagram L(p1, p2, p3) with every crossing positive."""
    ps = (p1, p2, p3)
    if any(p <= 0 for p in ps):
        raise ParityError("pretzel parameters must be positive")
    odd = all(p % 2 == 1 for p in ps)
    even = all(p % 2 == 0 for p in ps)
    if kind == "knot-odd" and not odd or kind == "link-even" and not even or not (odd or even):
        raise ParityError(f"pretzel({p1},{p2},{p3}) needs all odd or all even parameters")
    d = to_diagram(Sum(Sum(TwistBox(p1), TwistBox(p2)), TwistBox(p3)), "N")
    d = make_positive(d)
    if any(x.sign < 0 for x in d.crossings):
        raise AssertionError("pretzel diagram could not be made positive")
    return d


def twist_knot(n: int, clasp: Literal["positive", "negative"] = "negative") -> OrientedDiagram:
    """Twist knot with n full twists (2n positive crossings) and a two-crossing clasp."""
    if n < 1:
        raise TangleError("twist_knot needs n >= 1")
    if clasp not in ("positive", "negative"):
        raise TangleError("clasp must be 'positive' or 'negative'")
    # horizontal twists against a vertical clasp; antiparallel twist strands are positive
    c = -2 if clasp == "negative" else 2
    d = to_diagram(Sum(VerticalTwist(2 * n), TwistBox(c)), "N")
    negatives = sum(x.sign < 0 for x in d.crossings)
    if negatives != (2 if clasp == "negative" else 0):
        raise AssertionError(f"unexpected twist knot signs {[x.sign for x in d.crossings]}")
    return d


def torus2(
    n: int,
    orientation: Literal["parallel", "antiparallel"] = "parallel",
    hand: Literal["right", "left"] = "right",
) -> OrientedDiagram:
    """The (2, n) torus link as a closed 2-string twist.

    ``hand="right"`` gives the diagram whose crossings are all positive for
    the requested orientation; ``"left"`` is its mirror image.
    """
    if n < 1:
        raise TangleError("torus2 needs n >= 1")
    if orientation == "antiparallel" and n % 2:
        raise ParityError("an odd twist closes to a knot; only the parallel orientation exists")
    if orientation not in ("parallel", "antiparallel") or hand not in ("right", "left"):
        raise TangleError("bad torus2 options")
    if orientation == "parallel":
        expr = TwistBox(-n if hand == "right" else n)
        orient = {"NW": "in", "NE": "in"}
    else:
        expr = TwistBox(n if hand == "right" else -n)
        orient = {"NW": "in", "NE": "out"}
    if n % 2:
        orient = {"NW": "in"}
    return to_diagram(expr, "D", orient)


def braid_closure(word: Sequence[int], strands: int | None = None) -> OrientedDiagram:
    """Closure of a braid; generator ``i`` (1-based) or ``-i`` for its inverse.

    Strands run upward; a positive generator gives a positive crossing.
    """
    word = list(word)
    m = strands or (max((abs(g) for g in word), default=0) + 1)
    if any(g == 0 or abs(g) >= m for g in word):
        raise TangleError(f"bad braid word {word} on {m} strands")
    nxt = 0
    current = []
    for _ in range(m):
        nxt += 1
        current.append(nxt)
    bottom = list(current)
    raw = []
    for g in word:
        i = abs(g) - 1
        left_in, right_in = current[i], current[i + 1]
        nxt += 1
        left_out = nxt
        nxt += 1
        right_out = nxt
        if g > 0:
            # over strand from SW to NE; under strand SE -> NW
            raw.append((right_in, left_in, left_out, right_out, 1))
        else:
            # over strand from SE to NW; under strand SW -> NE
            raw.append((left_in, left_out, right_out, right_in, -1))
        current[i], current[i + 1] = left_out, right_out
    # close: the top label of each strand is identified with its bottom label
    rename = {top: bot for top, bot in zip(current, bottom)}
    raw = [tuple(rename.get(e, e) for e in r[:4]) + (r[4],) for r in raw]
    used = {e for r in raw for e in r[:4]}
    free = sum(1 for b in bottom if b not in used)
    return build_diagram(raw, free)


def combine(
    a: OrientedDiagram,
    b: OrientedDiagram,
    how: Literal["connected_sum", "disjoint_sum"] = "connected_sum",
    site: tuple[int, int] | None = None,
) -> OrientedDiagram:
    """Connected sum at edges ``site = (edge of a, edge of b)`` or disjoint sum."""
    if how == "disjoint_sum":
        return disjoint_union(a, b)
    if how != "connected_sum":
        raise BadSite(f"unknown combination {how!r}")
    ea, eb = site if site is not None else (None, None)
    return connected_sum(a, b, ea, eb)
