"""Seifert surfaces from Seifert's algorithm and their Seifert matrices.

The surface is built from the Seifert circles as stacked disks joined by one
half-twisted band per crossing.  A basis of H_1 comes from the cycles of the
Seifert graph.  Linking numbers lk(g_i, g_j^+) are counted directly from
explicit curves drawn in a local chart around every crossing: no global
embedding is needed because away from the charts the curves run parallel to
the circles and never cross.

Chart coordinates: the two Seifert arcs at a crossing run upward along
``x = -1`` (left arc) and ``x = +1`` (right arc); the band spans the strip
between them for ``|y| < 1/2`` and a curve entering it at ``(-1, v)`` leaves at
``(1, -v)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .diagram import OrientedDiagram, seifert_circles
from .errors import DisconnectedDiagram

__all__ = ["SeifertSurface", "seifert_surface", "seifert_matrix"]

# corner indices (west, east, merged pair) of positive and negative crossings
_CORNERS = {1: (1, 3, (0, 2)), -1: (0, 2, (1, 3))}


@dataclass(frozen=True)
class SeifertSurface:
    """Combinatorial Seifert surface with a homology basis.

    Attributes:
        circle_of: edge label -> Seifert circle index.
        circle_count: number of Seifert circles.
        height: stacking level of each circle's disk.
        normal_up: whether each disk's positive normal points up.
        disk_side: +1 if the disk lies to the right of its circle, else -1.
        left_right: per crossing, (left circle, right circle) in the chart.
        cycles: each basis cycle as a list of (crossing, from circle, to circle).
        matrix: the Seifert matrix, rows and columns indexed by ``cycles``.
    """

    circle_of: dict[int, int]
    circle_count: int
    height: tuple[int, ...]
    normal_up: tuple[bool, ...]
    disk_side: tuple[int, ...]
    left_right: tuple[tuple[int, int], ...]
    cycles: tuple[tuple[tuple[int, int, int], ...], ...]
    matrix: tuple[tuple[int, ...], ...]


def _arcs(d: OrientedDiagram, circle_of: dict[int, int], i: int) -> tuple[int, int]:
    x = d.crossings[i]
    if x.sign > 0:
        return circle_of[x.b], circle_of[x.a]
    return circle_of[x.a], circle_of[x.d]


def _circle_orders(d: OrientedDiagram, circle_of: dict[int, int], count: int) -> list[list[int]]:
    """Crossings met by each circle in the order of travel."""
    orders: list[list[int]] = [[] for _ in range(count)]
    seen: set[int] = set()
    for start in sorted(d.heads):
        if start in seen:
            continue
        e = start
        k = circle_of[e]
        while e not in seen:
            seen.add(e)
            i, p = d.heads[e]
            orders[k].append(i)
            x = d.crossings[i]
            e = x.labels[x.seifert_out_pos(p)]
    return orders


def _region_tree(d: OrientedDiagram, circle_of: dict[int, int], count: int):
    parent = {}

    def find(u):
        while parent.setdefault(u, u) != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for f in range(len(d.faces)):
        find(f)
    for i, x in enumerate(d.crossings):
        m1, m2 = _CORNERS[x.sign][2]
        u, v = find(d.corner_face[(i, m1)]), find(d.corner_face[(i, m2)])
        if u != v:
            parent[u] = v
    left = [None] * count
    right = [None] * count
    for e, k in circle_of.items():
        lf, rf = find(d.left_face(e)), find(d.right_face(e))
        if left[k] is None:
            left[k], right[k] = lf, rf
        elif (left[k], right[k]) != (lf, rf):
            raise AssertionError("inconsistent sides along a Seifert circle")
    # bipartite BFS from the region of face 0
    root = find(0)
    depth = [None] * count
    side = [0] * count
    queue = deque([(root, -1)])
    visited = {root}
    while queue:
        reg, lvl = queue.popleft()
        for k in range(count):
            if depth[k] is not None or reg not in (left[k], right[k]):
                continue
            depth[k] = lvl + 1
            other = right[k] if left[k] == reg else left[k]
            side[k] = 1 if left[k] == reg else -1
            if other in visited:
                raise AssertionError("region graph is not a tree")
            visited.add(other)
            queue.append((other, lvl + 1))
    if any(x is None for x in depth):
        raise AssertionError("unreachable Seifert circle")
    return depth, side


def _cycles(count: int, bands: list[tuple[int, int]]) -> list[list[tuple[int, int, int]]]:
    adj: list[list[tuple[int, int]]] = [[] for _ in range(count)]
    for i, (u, v) in enumerate(bands):
        adj[u].append((i, v))
        adj[v].append((i, u))
    # BFS spanning tree from circle 0
    via: dict[int, tuple[int, int] | None] = {0: None}
    order = deque([0])
    tree: set[int] = set()
    while order:
        u = order.popleft()
        for i, v in adj[u]:
            if v not in via:
                via[v] = (i, u)
                tree.add(i)
                order.append(v)
    if len(via) != count:
        raise DisconnectedDiagram("Seifert graph is disconnected")

    def path_to_root(u):
        out = [u]
        while via[u] is not None:
            u = via[u][1]
            out.append(u)
        return out

    cycles = []
    for i, (u, v) in enumerate(bands):
        if i in tree:
            continue
        pu, pv = path_to_root(u), path_to_root(v)
        common = next(w for w in pu if w in set(pv))
        # v -> common -> u along the tree, then u -> v across band i
        steps = [(i, u, v)]
        w = v
        while w != common:
            j, up = via[w]
            steps.append((j, w, up))
            w = up
        down = []
        w = u
        while w != common:
            j, up = via[w]
            down.append((j, up, w))
            w = up
        steps.extend(reversed(down))
        cycles.append(steps)
    return cycles


Point = tuple[Fraction, Fraction]


def _intersect(p0: Point, p1: Point, q0: Point, q1: Point):
    """Interior intersection of two segments, or None.

    Raises ValueError on a degenerate contact so the caller can perturb.
    """
    rx, ry = p1[0] - p0[0], p1[1] - p0[1]
    sx, sy = q1[0] - q0[0], q1[1] - q0[1]
    den = rx * sy - ry * sx
    qpx, qpy = q0[0] - p0[0], q0[1] - p0[1]
    if den == 0:
        if qpx * ry - qpy * rx == 0:
            # collinear: overlap would be degenerate
            t0 = (qpx * rx + qpy * ry) / (rx * rx + ry * ry)
            t1 = t0 + (sx * rx + sy * ry) / (rx * rx + ry * ry)
            if max(t0, t1) >= 0 and min(t0, t1) <= 1:
                raise ValueError("collinear overlap")
        return None
    t = (qpx * sy - qpy * sx) / den
    u = (qpx * ry - qpy * rx) / den
    if t < 0 or t > 1 or u < 0 or u > 1:
        return None
    if t in (0, 1) or u in (0, 1):
        raise ValueError("contact at an endpoint")
    return (rx, ry), (sx, sy)


class _Chart:
    __slots__ = ("crossing", "sign", "left", "right", "s_left", "s_right")

    def __init__(self, crossing, sign, left, right, s_left, s_right):
        self.crossing = crossing
        self.sign = sign
        self.left = left
        self.right = right
        self.s_left = s_left
        self.s_right = s_right


def _curve_pieces(cycle, orders, charts, depth_r: Fraction, lateral: Fraction):
    """Pieces of one curve in each chart: chart -> [(polyline, layer)]."""
    out: dict[int, list] = {}
    k = len(cycle)
    two = Fraction(2)
    for idx in range(k):
        band, frm, to = cycle[idx]
        nxt_band = cycle[(idx + 1) % k][0]
        ch = charts[band]
        # band traversal
        left_pt = (Fraction(-1), lateral)
        right_pt = (Fraction(1), -lateral)
        poly = [left_pt, right_pt] if frm == ch.left else [right_pt, left_pt]
        out.setdefault(band, []).append((poly, ("band",)))
        # hug along circle `to` from band to nxt_band
        order = orders[to]
        i0 = order.index(band)
        i1 = order.index(nxt_band)
        span = [order[(i0 + s) % len(order)] for s in range(1, (i1 - i0) % len(order))]

        def geom(c_idx):
            chx = charts[c_idx]
            if chx.left == to:
                x0, s, fy = Fraction(-1), chx.s_left, lateral
            else:
                x0, s, fy = Fraction(1), chx.s_right, -lateral
            return x0, x0 + s * depth_r, fy

        x0, hx, fy = geom(band)
        out.setdefault(band, []).append(([(x0, fy), (hx, fy), (hx, two)], ("disk", to)))
        for c_idx in span:
            _, hx, _ = geom(c_idx)
            out.setdefault(c_idx, []).append(([(hx, -two), (hx, two)], ("disk", to)))
        x0, hx, fy = geom(nxt_band)
        out.setdefault(nxt_band, []).append(([(hx, -two), (hx, fy), (x0, fy)], ("disk", to)))
    # glue: each traversal's final radial ends where the next band starts, fine
    return out


def _linking(alpha, beta, charts, normal_up, lat_a, lat_b) -> int:
    total = 0
    for c_idx, a_pieces in alpha.items():
        b_pieces = beta.get(c_idx)
        if not b_pieces:
            continue
        ch = charts[c_idx]
        for a_poly, a_layer in a_pieces:
            for b_poly, b_layer in b_pieces:
                for s in range(len(a_poly) - 1):
                    for t in range(len(b_poly) - 1):
                        hit = _intersect(a_poly[s], a_poly[s + 1], b_poly[t], b_poly[t + 1])
                        if hit is None:
                            continue
                        da, db = hit
                        if a_layer[0] == "band" and b_layer[0] == "band":
                            # half twist: for a positive crossing the curve nearer
                            # the lower left corner is on top
                            a_over = (lat_a < lat_b) if ch.sign > 0 else (lat_a > lat_b)
                        elif a_layer[0] == "band":
                            a_over = True
                        elif b_layer[0] == "band":
                            a_over = False
                        else:
                            if a_layer[1] != b_layer[1]:
                                raise AssertionError("different disks overlap in a chart")
                            # the pushed-off curve sits on the positive side
                            a_over = not normal_up[a_layer[1]]
                        o, u = (da, db) if a_over else (db, da)
                        cr = o[0] * u[1] - o[1] * u[0]
                        total += 1 if cr > 0 else -1
    if total % 2:
        raise AssertionError("odd crossing count between closed curves")
    return total // 2


def seifert_surface(d: OrientedDiagram) -> SeifertSurface:
    """Seifert surface of a connected diagram with its Seifert matrix."""
    if not d.is_connected:
        raise DisconnectedDiagram("the Seifert matrix needs a connected diagram")
    count, circle_of = seifert_circles(d)
    if d.n == 0:
        return SeifertSurface({}, count, (0,), (True,), (-1,), (), (), ())
    depth, side = _region_tree(d, circle_of, count)
    # disk to the left of its oriented circle means normal up
    normal_up = tuple(s < 0 for s in side)
    bands = [_arcs(d, circle_of, i) for i in range(d.n)]
    charts = [
        _Chart(i, d.crossings[i].sign, lc, rc, side[lc], side[rc])
        for i, (lc, rc) in enumerate(bands)
    ]
    for ch in charts:
        if ch.s_left > 0 and ch.s_right < 0:
            raise AssertionError("band region cannot be inside both disks")
    orders = _circle_orders(d, circle_of, count)
    cycles = _cycles(count, bands)
    m = len(cycles)
    matrix = None
    for attempt in range(1, 8):
        try:
            matrix = _matrix(cycles, orders, charts, normal_up, attempt)
            break
        except ValueError:
            continue
    if matrix is None:
        raise AssertionError("could not place curves in general position")
    return SeifertSurface(
        circle_of=circle_of,
        circle_count=count,
        height=tuple(depth),
        normal_up=normal_up,
        disk_side=tuple(side),
        left_right=tuple(bands),
        cycles=tuple(tuple(c) for c in cycles),
        matrix=matrix,
    )


def _params(q: int, total: int, attempt: int) -> tuple[Fraction, Fraction]:
    # distinct depths and lateral offsets; later attempts shift them off any coincidence
    lateral = Fraction(2 * q + 1, 2 * total) * Fraction(9, 10) - Fraction(9, 20)
    lateral += Fraction(attempt - 1, 97 * total * attempt)
    depth = Fraction(q + 1, (total + 1) * (3 + attempt)) + Fraction(1, 1009 * attempt)
    return depth, lateral


def _matrix(cycles, orders, charts, normal_up, attempt: int) -> tuple[tuple[int, ...], ...]:
    m = len(cycles)
    total = 2 * m
    alphas, betas = [], []
    for k, cyc in enumerate(cycles):
        ra, va = _params(2 * k, total, attempt)
        rb, vb = _params(2 * k + 1, total, attempt)
        alphas.append((_curve_pieces(cyc, orders, charts, ra, va), va))
        betas.append((_curve_pieces(cyc, orders, charts, rb, vb), vb))
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            a, la = alphas[i]
            b, lb = betas[j]
            row.append(_linking(a, b, charts, normal_up, la, lb))
        rows.append(tuple(row))
    return tuple(rows)


def seifert_matrix(d: OrientedDiagram) -> tuple[tuple[int, ...], ...]:
    return seifert_surface(d).matrix
