"""Independent reference computations used to pin values in the tests.

None of these share code paths with the library beyond the PD container:
the bracket is a plain 2^c state sum, the signature comes from a Goeritz
matrix, the Alexander polynomial from Fox calculus on the Wirtinger
presentation, and Tristram-Levine values from floating point eigenvalues.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import sympy as sp

from linkforge.diagram import OrientedDiagram

T = sp.Symbol("t")


def brute_bracket(d: OrientedDiagram) -> dict[int, int]:
    """<D> with <O> = 1 by summing all 2^c states; exponents of A."""
    out: dict[int, int] = {}
    for state in itertools.product((0, 1), repeat=d.n):
        parent = {}

        def find(u):
            while parent.setdefault(u, u) != u:
                u = parent[u]
            return u

        for x, s in zip(d.crossings, state):
            a, b, c, dd = x.labels
            pairs = ((a, dd), (b, c)) if s == 0 else ((a, b), (c, dd))
            for u, v in pairs:
                parent[find(u)] = find(v)
        loops = len({find(e) for e in d.heads}) + d.unknot_circles
        if d.n == 0:
            loops = d.unknot_circles
        na = state.count(0)
        nb = d.n - na
        # A^(na - nb) * (-A^2 - A^-2)^(loops - 1)
        poly = {na - nb: 1}
        for _ in range(loops - 1):
            nxt: dict[int, int] = {}
            for e, c in poly.items():
                nxt[e + 2] = nxt.get(e + 2, 0) - c
                nxt[e - 2] = nxt.get(e - 2, 0) - c
            poly = nxt
        for e, c in poly.items():
            out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def _face_colors(d: OrientedDiagram) -> list[int]:
    nf = len(d.faces)
    color = [None] * nf
    color[0] = 0
    adj: list[list[int]] = [[] for _ in range(nf)]
    for e in d.heads:
        lf, rf = d.left_face(e), d.right_face(e)
        adj[lf].append(rf)
        adj[rf].append(lf)
    stack = [0]
    while stack:
        f = stack.pop()
        for g in adj[f]:
            if color[g] is None:
                color[g] = 1 - color[f]
                stack.append(g)
            elif color[g] == color[f]:
                raise AssertionError("faces are not two-colourable")
    return color


def goeritz_signature(d: OrientedDiagram, shaded_color: int = 1) -> int:
    """Signature via the Gordon-Litherland formula for a connected diagram."""
    if d.n == 0:
        return 0
    color = _face_colors(d)
    white = sorted(f for f in range(len(d.faces)) if color[f] != shaded_color)
    index = {f: k for k, f in enumerate(white)}
    g = np.zeros((len(white), len(white)), dtype=np.int64)
    mu = 0
    for i, x in enumerate(d.crossings):
        corners = [d.corner_face[(i, p)] for p in range(4)]
        shaded_even = color[corners[0]] == shaded_color
        eta = 1 if shaded_even else -1
        seifert_merged_even = x.sign > 0
        if shaded_even == seifert_merged_even:
            mu += eta
        w1, w2 = (corners[1], corners[3]) if shaded_even else (corners[0], corners[2])
        if w1 != w2:
            a, b = index[w1], index[w2]
            g[a, b] -= eta
            g[b, a] -= eta
    for k in range(len(white)):
        g[k, k] = -(g[k].sum() - g[k, k])
    reduced = g[1:, 1:].astype(float)
    if reduced.size == 0:
        sig = 0
    else:
        ev = np.linalg.eigvalsh(reduced)
        # exact nullity, then drop that many smallest eigenvalues
        nullity = reduced.shape[0] - sp.Matrix(g[1:, 1:].tolist()).rank()
        keep = sorted(ev, key=abs)[nullity:]
        sig = int(sum(1 for v in keep if v > 0) - sum(1 for v in keep if v < 0))
    return sig - mu


def fox_alexander(d: OrientedDiagram) -> sp.Expr:
    """Alexander polynomial of a knot diagram up to units, from Fox calculus."""
    parent = {e: e for e in d.heads}

    def find(u):
        while parent[u] != u:
            u = parent[u]
        return u

    for x in d.crossings:
        parent[find(x.b)] = find(x.d)
    arcs = sorted({find(e) for e in d.heads})
    idx = {a: k for k, a in enumerate(arcs)}
    n = len(arcs)
    if d.n == 0:
        return sp.Integer(1)
    m = sp.zeros(d.n, n)
    for r, x in enumerate(d.crossings):
        k, i, j = idx[find(x.b)], idx[find(x.a)], idx[find(x.c)]
        m[r, k] += 1 - T
        if x.sign > 0:
            m[r, i] += T
            m[r, j] += -1
        else:
            m[r, i] += -1
            m[r, j] += T
    return sp.expand(m[1:, 1:].det())


def normalize_alexander(p: sp.Expr) -> sp.Poly | None:
    """Strip units: divide out the lowest power of t and fix the sign."""
    p = sp.expand(p)
    if p == 0:
        return None
    poly = sp.Poly(sp.expand(p * T ** 200), T)
    terms = poly.terms()
    low = min(e[0] for e, _ in terms)
    q = sp.Poly(sp.expand(poly.as_expr() / T ** low), T)
    if q.LC() < 0:
        q = -q
    return q


def numeric_tl(matrix, omega: complex) -> int:
    """Signature of (1 - w) A + (1 - conj w) A^T by eigenvalues."""
    a = np.array(matrix, dtype=complex)
    if a.size == 0:
        return 0
    h = (1 - omega) * a + (1 - np.conj(omega)) * a.T
    ev = np.linalg.eigvalsh(h)
    return int(np.sum(ev > 1e-9) - np.sum(ev < -1e-9))


def seifert_circle_count(d: OrientedDiagram) -> tuple[int, dict[int, int]]:
    """Seifert circles by union-find over the oriented smoothing of every crossing."""
    parent = {e: e for e in d.heads}

    def find(u):
        while parent[u] != u:
            u = parent[u]
        return u

    for x in d.crossings:
        # the incoming under edge continues along the outgoing over edge
        over_out = x.d if x.sign > 0 else x.b
        over_in = x.b if x.sign > 0 else x.d
        parent[find(x.a)] = find(over_out)
        parent[find(over_in)] = find(x.c)
    roots = sorted({find(e) for e in d.heads})
    idx = {r: k for k, r in enumerate(roots)}
    return len(roots) + d.unknot_circles, {e: idx[find(e)] for e in d.heads}


def brute_d_min(d: OrientedDiagram) -> Fraction:
    """Lowest t-power of V = (-A^3)^(-w) <D> at t = A^-4, from the state sum."""
    w = sum(x.sign for x in d.crossings)
    top = max(brute_bracket(d)) - 3 * w
    return Fraction(-top, 4)
