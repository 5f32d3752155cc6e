from __future__ import annotations

import math
import random

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from linkforge.bracket import d_min, jones, kauffman_bracket
from linkforge.diagram import connected_sum, mirror, parse_pd, positivity, relabel, seifert_circles, serialize_pd, writhe
from linkforge.domination import check_geq, descendants, flip_all
from linkforge.invariants import fingerprint, signature, tristram_levine
from linkforge.laurent import LaurentPoly
from linkforge.moves import change_crossing, descending_resolution, smooth, spine, split
from linkforge.tangle import HSym, Rot, VSym, from_text, parse_tangle, pretzel, to_diagram

from .strategies import diagrams, random_move

A = LaurentPoly({1: 1}, "A")
A_INV = LaurentPoly({-1: 1}, "A")
common = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@common
@given(diagrams())
def test_round_trip(d):
    again = parse_pd(serialize_pd(d))
    assert serialize_pd(again) == serialize_pd(d)


@common
@given(diagrams())
def test_mirror_writhe_and_positivity(d):
    assert writhe(mirror(d)) == -writhe(d)
    assert positivity(mirror(d)).m == d.n - positivity(d).m


@common
@given(diagrams(), st.integers(0, 50))
def test_seifert_circles_relabel_invariant(d, shift):
    # rotate labels along each component
    mapping = {}
    for comp in d.components:
        k = shift % len(comp)
        for j, e in enumerate(comp):
            mapping[e] = comp[(j + k) % len(comp)]
    assert seifert_circles(relabel(d, mapping))[0] == seifert_circles(d)[0]


@common
@given(diagrams(), st.data())
def test_skein_relation(d, data):
    p = data.draw(st.integers(0, d.n - 1))
    lhs = kauffman_bracket(d)
    assert lhs == A * kauffman_bracket(split(d, p, "A")) + A_INV * kauffman_bracket(split(d, p, "B"))


@common
@given(diagrams(), st.integers(0, 2**32 - 1))
def test_jones_invariant_under_moves(d, seed):
    rng = random.Random(seed)
    v = jones(d)
    cur = d
    for _ in range(3):
        _, cur = random_move(cur, rng)
        assert cur.mu == d.mu
        assert jones(cur) == v


@common
@given(diagrams())
def test_mirror_covariance(d):
    assert signature(mirror(d)) == -signature(d)
    assert jones(mirror(d)) == jones(d).invert_variable()


@common
@given(diagrams())
def test_tristram_levine_at_one(d):
    assert tristram_levine(d, 1) == signature(d)


@common
@given(diagrams(6), diagrams(6))
def test_connected_sum_additive(a, b):
    s = connected_sum(a, b)
    assert signature(s) == signature(a) + signature(b)
    assert jones(s) == jones(a) * jones(b)


@common
@given(diagrams(), st.data())
def test_moves_component_counts(d, data):
    p = data.draw(st.integers(0, d.n - 1))
    assert change_crossing(d, p).mu == d.mu
    assert change_crossing(change_crossing(d, p), p) == d
    assert abs(smooth(d, p).mu - d.mu) == 1


@common
@given(diagrams())
def test_descending_resolution_trivial(d):
    assert fingerprint(descending_resolution(d)).is_trivial()


@common
@given(diagrams(), st.data())
def test_spine_idempotent(d, data):
    comp = data.draw(st.integers(0, len(d.components) - 1))
    s = spine(d, comp)
    if len(s.components) == len(d.components):
        assert not any(s.strand_components(i) == (comp, comp) for i in range(s.n))
        assert spine(s, comp).canonical_form() == s.canonical_form()


@common
@given(diagrams())
def test_murasugi_bound(d):
    if d.is_connected:
        c_minus = positivity(d).m
        assert d_min(jones(d)) >= -c_minus - signature(d) / 2


@common
@given(diagrams(7), st.data())
def test_giller_along_chains(d, data):
    # removing flips one at a time never lowers the signature
    positive = [i for i, x in enumerate(d.crossings) if x.sign > 0]
    order = data.draw(st.permutations(positive))
    sigmas = [signature(d)]
    cur = d
    for p in order[:4]:
        cur = change_crossing(cur, p)
        sigmas.append(signature(cur))
    for before, after in zip(sigmas, sigmas[1:]):
        assert after - 2 <= before <= after


@common
@given(diagrams(6), st.integers(0, 3))
def test_descendant_count_formula(d, k):
    c = sum(x.sign > 0 for x in d.crossings)
    k = min(k, c)
    flips = [f for f, _ in descendants(d, k)]
    assert len(flips) == sum(math.comb(c, j) for j in range(k + 1))
    assert len(set(flips)) == len(flips)
    assert flips == sorted(flips, key=lambda f: (len(f), f))


@common
@given(diagrams(6), diagrams(6))
def test_witness_replays(d, other):
    target = fingerprint(other)
    res = check_geq(d, target, max_flips=min(2, sum(x.sign > 0 for x in d.crossings)), strict=True)
    if res.verdict == "witness":
        assert fingerprint(flip_all(d, res.flips)) == target


tangle_text = st.recursive(
    st.one_of(
        st.integers(-3, 3).map(lambda n: f"T({n})"),
        st.integers(2, 3).map(lambda n: f"T(1/{n})"),
    ),
    lambda inner: st.one_of(
        st.tuples(inner, inner).map(lambda t: f"{t[0]}+{t[1]}"),
        inner.map(lambda t: f"R({t})"),
        inner.map(lambda t: f"V({t})"),
        inner.map(lambda t: f"H({t})"),
    ),
    max_leaves=3,
)


@common
@given(tangle_text)
def test_tangle_symmetries_are_involutions(text):
    expr, _ = parse_tangle(text)
    base = to_diagram(expr, "N").canonical_form()
    assert to_diagram(Rot(Rot(Rot(Rot(expr)))), "N").canonical_form() == base
    assert to_diagram(VSym(VSym(expr)), "N").canonical_form() == base
    assert to_diagram(HSym(HSym(expr)), "N").canonical_form() == base


@common
@given(tangle_text)
def test_tangle_text_round_trip(text):
    expr, _ = parse_tangle(text)
    assert parse_tangle(str(expr))[0] == expr
    assert from_text(f"N:{expr}").canonical_form() == to_diagram(expr, "N").canonical_form()


@common
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_odd_pretzels_positive(a, b, c):
    d = pretzel(2 * a + 1, 2 * b + 1, 2 * c + 1)
    assert positivity(d).is_positive
    assert signature(d) == -2
