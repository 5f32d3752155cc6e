from __future__ import annotations

import pytest

from linkforge.bracket import jones
from linkforge.catalog import named
from linkforge.diagram import connected_sum, disjoint_union, positivity, unknot
from linkforge.errors import BadSite, InvalidVerticalTwist, OrientationMismatch, ParityError, TangleError
from linkforge.invariants import fingerprint, linking_numbers, obstruction_report, signature
from linkforge.tangle import (
    HSym,
    Rot,
    Sum,
    TwistBox,
    VerticalTwist,
    VSym,
    braid_closure,
    combine,
    from_text,
    parse_tangle,
    pretzel,
    to_diagram,
    torus2,
    twist_knot,
)


def _same_up_to_unit(a, b) -> bool:
    # equal brackets up to a factor +-A^k: compare after normalising the lowest term
    ta, tb = a.terms, b.terms
    if len(ta) != len(tb):
        return False
    sa, sb = min(ta), min(tb)
    ca, cb = ta[sa], tb[sb]
    return all(tb.get(e - sa + sb, 0) * ca == c * cb for e, c in ta.items()) and abs(ca) == abs(cb)


# -- parser ----------------------------------------------------------------


def test_parse_tangle_forms():
    assert parse_tangle("T(3)") == (TwistBox(3), None)
    assert parse_tangle("T(1/3)") == (VerticalTwist(3), None)
    assert parse_tangle("T(1,2)") == (Sum(TwistBox(1), TwistBox(2)), None)
    assert parse_tangle("N:T(1,2)")[1] == "N"
    expr, closure = parse_tangle("X+:R(T(-1,-2))+T(-2)")
    assert closure == "X+"
    assert expr == Sum(Rot(Sum(TwistBox(-1), TwistBox(-2))), TwistBox(-2))
    assert parse_tangle("V(H(T(2)))")[0] == VSym(HSym(TwistBox(2)))


def test_text_round_trip():
    for text in ["T(3)", "T(1/2)", "R(T(-1)+T(2))+T(4)", "V(T(2))", "H(R(T(1/3)))"]:
        expr, _ = parse_tangle(text)
        assert parse_tangle(str(expr))[0] == expr


def test_parse_errors():
    for bad in ["T(", "T(1/1)", "Q(2)", "N:", "T(1)+", "T(a)"]:
        with pytest.raises(TangleError):
            parse_tangle(bad)


def test_vertical_twist_needs_two():
    with pytest.raises(InvalidVerticalTwist):
        VerticalTwist(1)
    with pytest.raises(InvalidVerticalTwist):
        parse_tangle("T(1/1)")


# -- closures and conventions -------------------------------------------------


def test_twist_direction_convention():
    for closure in ("N", "D"):
        d = to_diagram("T(2)", closure)
        assert [x.sign for x in d.crossings] == [1, 1]


def test_denominator_of_zero_is_trivial_link():
    d = to_diagram("T(0)", "D")
    assert d.n == 0 and d.mu == 2
    assert fingerprint(d).is_trivial()
    assert to_diagram("T(0)", "N").mu == 1


def test_x_plus_closure_of_minus_two():
    d = from_text("X+:T(-2)")
    assert d.n == 3
    assert positivity(d).is_positive
    assert fingerprint(d) == fingerprint(named("right-trefoil"))


def test_numerator_of_one_two_is_left_trefoil():
    # T(1,2) closes to the mirror of the right trefoil under these twist conventions
    assert fingerprint(from_text("N:T(1,2)")) == fingerprint(named("left-trefoil"))
    assert fingerprint(from_text("N:T(-1,-2)")) == fingerprint(named("right-trefoil"))


def test_x_plus_closure_sigma_bound():
    d = from_text("X+:R(T(-1,-2))+T(-2)")
    assert positivity(d).is_positive
    assert signature(d) <= -4


def test_orientation_mismatch():
    with pytest.raises(OrientationMismatch):
        to_diagram("T(2)", "N", {"NW": "in", "NE": "in"})
    with pytest.raises(TangleError):
        to_diagram("T(2)", "N", {"XX": "in"})


@pytest.mark.parametrize("a", range(-4, 5))
@pytest.mark.parametrize("b", range(-4, 5))
def test_sum_of_twists(a, b):
    from linkforge.bracket import kauffman_bracket

    summed = to_diagram(Sum(TwistBox(a), TwistBox(b)), "N")
    single = to_diagram(TwistBox(a + b), "D")
    assert _same_up_to_unit(kauffman_bracket(summed), kauffman_bracket(single))
    assert summed.mu == single.mu


@pytest.mark.parametrize("text", ["T(3)", "T(-2)", "T(1/2)", "T(1,2)", "R(T(2))+T(3)", "T(1/3)+T(-1)"])
def test_symmetry_identities(text):
    expr, _ = parse_tangle(text)
    base = to_diagram(expr, "N").canonical_form()
    assert to_diagram(Rot(Rot(Rot(Rot(expr)))), "N").canonical_form() == base
    assert to_diagram(VSym(VSym(expr)), "N").canonical_form() == base
    assert to_diagram(HSym(HSym(expr)), "N").canonical_form() == base


def test_rotation_swaps_closures():
    for n in (2, 3, -3):
        assert fingerprint(to_diagram(Rot(TwistBox(n)), "D")).mu == to_diagram(TwistBox(n), "N").mu


# -- families ---------------------------------------------------------------


def test_pretzel_one_one_one():
    d = pretzel(1, 1, 1)
    assert fingerprint(d) == fingerprint(named("right-trefoil"))
    assert signature(d) == -2


def test_pretzel_three_five_seven():
    d = pretzel(3, 5, 7)
    assert d.n == 15 and d.mu == 1
    assert positivity(d).is_positive
    assert signature(d) == -2


def test_pretzel_even():
    d = pretzel(2, 2, 2)
    assert d.mu == 3
    assert positivity(d).is_positive
    assert signature(d) == -2


def test_pretzel_parity():
    with pytest.raises(ParityError):
        pretzel(1, 2, 3)
    with pytest.raises(ParityError):
        pretzel(2, 2, 2, kind="knot-odd")
    with pytest.raises(ParityError):
        pretzel(0, 1, 1)


def test_odd_pretzels_positive():
    for p in (1, 3, 5):
        for q in (1, 3):
            for r in (1, 3, 5):
                assert positivity(pretzel(p, q, r)).is_positive


def test_twist_knots():
    fig8 = twist_knot(1, "negative")
    assert fingerprint(fig8) == fingerprint(named("figure-eight"))
    assert jones(fig8) == jones(fig8).invert_variable()
    assert signature(fig8) == 0
    stevedore = twist_knot(2, "negative")
    assert stevedore.n == 6 and positivity(stevedore).m == 2 and signature(stevedore) == 0
    assert fingerprint(twist_knot(1, "positive")) == fingerprint(named("right-trefoil"))


def test_torus2():
    hopf = torus2(2)
    assert positivity(hopf).is_positive and signature(hopf) == -1
    assert signature(torus2(4, "antiparallel")) == -1
    assert signature(torus2(5)) == -4
    assert signature(torus2(3, hand="left")) == 2
    with pytest.raises(ParityError):
        torus2(3, "antiparallel")


def test_braid_closure():
    d = braid_closure([1, 2] * 3)
    assert d.mu == 3 and positivity(d).is_positive
    assert signature(d) == -4
    assert fingerprint(braid_closure([1, 1, 1])) == fingerprint(named("right-trefoil"))
    assert fingerprint(braid_closure([-1, -1])) == fingerprint(named("hopf-left"))


def test_combine():
    mixed = combine(named("hopf-left"), torus2(4, "antiparallel"))
    assert signature(mixed) == 0
    split = combine(unknot(), named("right-trefoil"), how="disjoint_sum")
    assert signature(split) == -2 and split.mu == 2
    hh = combine(named("hopf-right"), named("hopf-left"))
    assert signature(hh) == 0
    assert sorted(linking_numbers(hh)) == [-1, 0, 1]
    assert obstruction_report(hh).amphicheiral_possible


def test_combine_bad_site():
    with pytest.raises(BadSite):
        combine(torus2(3), torus2(3), site=(99, 1))


def test_combine_matches_diagram_operations():
    a, b = torus2(3), torus2(5)
    assert fingerprint(combine(a, b)) == fingerprint(connected_sum(a, b))
    assert fingerprint(combine(a, b, how="disjoint_sum")) == fingerprint(disjoint_union(a, b))
