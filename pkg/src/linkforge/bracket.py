"""Kauffman bracket and Jones polynomial.

The bracket is evaluated by planar contraction: crossings are absorbed one at a
time and the partial state sum is kept per matching of the open edge ends,
which collapses the 2^c splittings into a handful of boundary states.
"""

from __future__ import annotations

import os
from fractions import Fraction

from .diagram import OrientedDiagram, writhe
from .errors import DiagramTooLarge, ZeroPolynomial
from .laurent import LaurentPoly

__all__ = ["bracket_cap", "kauffman_bracket", "jones", "d_min", "LOOP"]

DEFAULT_CAP = 20

# the value -A^2 - A^-2 of a closed loop
LOOP = LaurentPoly({2: -1, -2: -1}, "A")


def bracket_cap() -> int:
    raw = os.environ.get("LINKFORGE_BRACKET_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_CAP


def _crossing_order(d: OrientedDiagram) -> list[int]:
    # greedy: keep the frontier small by preferring crossings sharing open edges
    remaining = set(range(d.n))
    order: list[int] = []
    open_count: dict[int, int] = {}
    while remaining:
        best = max(
            remaining,
            key=lambda i: (sum(1 for e in d.crossings[i].labels if open_count.get(e, 0) == 1), -i),
        )
        remaining.discard(best)
        order.append(best)
        for e in d.crossings[best].labels:
            open_count[e] = open_count.get(e, 0) + 1
    return order


def _add_arc(ends: dict[int, int], u: int, v: int) -> int:
    """Insert an arc between edge ends u and v in place; return closed loops."""
    if u == v:
        return 1
    if ends.get(u) == v:
        del ends[u]
        del ends[v]
        return 1
    x = ends.pop(u, None)
    if x is not None:
        del ends[x]
    else:
        x = u
    y = ends.pop(v, None)
    if y is not None:
        del ends[y]
    else:
        y = v
    ends[x] = y
    ends[y] = x
    return 0


def _mul_into(acc: dict[int, int], poly: dict[int, int], shift: int, factor: dict[int, int]) -> None:
    for e1, c1 in poly.items():
        for e2, c2 in factor.items():
            k = e1 + e2 + shift
            acc[k] = acc.get(k, 0) + c1 * c2


def _loop_power(k: int, cache: dict[int, dict[int, int]]) -> dict[int, int]:
    if k not in cache:
        cache[k] = (LOOP ** k).terms
    return cache[k]


def _divide_by_loop(p: dict[int, int]) -> dict[int, int]:
    """Exact division by -A^2 - A^-2."""
    # -A^2 - A^-2 = -A^-2 (A^4 + 1); divide the shifted polynomial by A^4 + 1
    if not p:
        return {}
    lo = min(p)
    coeffs = {e - lo: c for e, c in p.items()}
    deg = max(coeffs)
    q: dict[int, int] = {}
    rem = dict(coeffs)
    for k in range(deg, 3, -1):
        c = rem.get(k, 0)
        if c:
            q[k - 4] = c
            rem[k] = 0
            rem[k - 4] = rem.get(k - 4, 0) - c
    if any(rem.get(k, 0) for k in range(4)):
        raise ArithmeticError("bracket not divisible by the loop value")
    # p / (-A^-2 (A^4+1)) = -A^2 * q * A^lo
    return {e + lo + 2: -c for e, c in q.items() if c}


def kauffman_bracket(d: OrientedDiagram, cap: int | None = None) -> LaurentPoly:
    """Unnormalized-framing bracket with <unknot> = 1."""
    cap = bracket_cap() if cap is None else cap
    if d.n > cap:
        raise DiagramTooLarge(f"{d.n} crossings exceeds the bracket cap of {cap}")
    if d.n == 0 and d.unknot_circles == 0:
        raise ValueError("the empty diagram has no bracket")
    loops_cache: dict[int, dict[int, int]] = {}
    states: dict[frozenset, dict[int, int]] = {frozenset(): {0: 1}}
    for i in _crossing_order(d):
        a, b, c, dd = d.crossings[i].labels
        new: dict[frozenset, dict[int, int]] = {}
        for key, poly in states.items():
            for shift, pairs in ((1, ((a, dd), (b, c))), (-1, ((a, b), (c, dd)))):
                ends: dict[int, int] = {}
                for u, v in key:
                    ends[u] = v
                    ends[v] = u
                loops = 0
                for u, v in pairs:
                    loops += _add_arc(ends, u, v)
                nkey = frozenset((u, v) for u, v in ends.items() if u < v)
                acc = new.setdefault(nkey, {})
                _mul_into(acc, poly, shift, _loop_power(loops, loops_cache))
        states = {k: {e: c for e, c in v.items() if c} for k, v in new.items()}
    total = states.get(frozenset(), {})
    circles = d.unknot_circles
    total = LaurentPoly(total, "A") * (LOOP ** circles)
    # every state counted all of its loops; <unknot> = 1 removes one
    return LaurentPoly(_divide_by_loop(total.terms), "A")


def jones(d: OrientedDiagram, cap: int | None = None) -> LaurentPoly:
    """V_L in x = t^(1/2): (-A^3)^(-w) <D> with A^e -> x^(-e/2)."""
    w = writhe(d)
    br = kauffman_bracket(d, cap)
    norm = br.shift(-3 * w)
    if w % 2:
        norm = -norm
    return norm.substitute_power(Fraction(-1, 2), "x")


def d_min(v: LaurentPoly) -> Fraction:
    """Lowest power of t in V (x-degree over two)."""
    if v.is_zero():
        raise ZeroPolynomial("d_min of the zero polynomial")
    return Fraction(v.min_exp(), 2)
