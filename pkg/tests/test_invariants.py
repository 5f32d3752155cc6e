from __future__ import annotations

import cmath
import math
from fractions import Fraction

import pytest
import sympy as sp

from linkforge.algebraic import RealAlgebraic, rational_signature
from linkforge.catalog import named, table, table_diagram
from linkforge.diagram import connected_sum, disjoint_union, mirror, reverse_components, unknot
from linkforge.errors import DisconnectedDiagram, NearJumpPoint
from linkforge.invariants import (
    fingerprint,
    linking_matrix,
    linking_numbers,
    obstruction_report,
    signature,
    trivial_jones,
    tristram_levine,
)
from linkforge.moves import Site, reidemeister
from linkforge.seifert import seifert_matrix, seifert_surface
from linkforge.tangle import pretzel, torus2, twist_knot

from .oracles import T, fox_alexander, goeritz_signature, normalize_alexander, numeric_tl


def _psi(re: float) -> complex:
    return complex(re, math.sqrt(1 - re * re))


def _omega_for(re: float) -> complex:
    # (1 - w) A + (1 - conj w) A^T is a positive multiple of conj(psi) A + psi A^T
    return cmath.exp(2j * math.asin(re))


# -- Seifert matrix --------------------------------------------------------


def test_trefoil_seifert_matrix(trefoil):
    a = sp.Matrix(seifert_matrix(trefoil))
    assert a.shape == (2, 2)
    ref = sp.Matrix([[-1, 1], [0, -1]])
    # congruence invariants: symmetrised signature, determinant, Alexander polynomial
    assert rational_signature((a + a.T).tolist()) == rational_signature((ref + ref.T).tolist())
    assert (a + a.T).det() == (ref + ref.T).det()
    assert normalize_alexander((a - T * a.T).det()) == normalize_alexander((ref - T * ref.T).det())


def test_hopf_seifert_matrix(hopf):
    assert seifert_matrix(hopf) == ((-1,),)


def test_unknot_seifert_matrix():
    assert seifert_matrix(unknot()) == ()


def test_seifert_matrix_size(trefoil):
    for _, d in table(8):
        if d.is_connected:
            surf = seifert_surface(d)
            assert len(surf.matrix) == d.n - surf.circle_count + 1


def test_disconnected_refused(trefoil):
    with pytest.raises(DisconnectedDiagram):
        seifert_matrix(disjoint_union(trefoil, trefoil))


def test_seifert_alexander_matches_fox():
    for name, d in table(8, links=False):
        a = sp.Matrix(seifert_matrix(d)) if d.n else sp.zeros(0, 0)
        ours = normalize_alexander((a - T * a.T).det()) if a.shape[0] else normalize_alexander(sp.Integer(1))
        assert ours == normalize_alexander(fox_alexander(d)), name


def test_signature_matches_goeritz():
    for name, d in table(9):
        if d.is_connected:
            assert signature(d) == goeritz_signature(d, 1) == goeritz_signature(d, 0), name


# -- signatures --------------------------------------------------------------


def test_signature_values(trefoil):
    assert signature(trefoil) == -2
    assert signature(named("torus-2-5")) == -4
    assert signature(named("torus-2-4")) == -3
    assert signature(named("torus-3-3")) == -4
    assert signature(named("8^3_10")) == -3
    assert signature(named("hopf-left")) == 1


def test_signature_split_additive(trefoil):
    assert signature(disjoint_union(trefoil, unknot())) == -2
    assert signature(unknot(3)) == 0


def test_tristram_levine_torus_2_5():
    d = named("torus-2-5")
    assert tristram_levine(d, Fraction(9, 10)) == -4
    assert tristram_levine(d, Fraction(1, 2)) == -2
    assert tristram_levine(d, Fraction(1, 10)) == 0
    assert tristram_levine(d, _psi(0.9)) == -4


def test_tristram_levine_6_2():
    d = named("6_2")
    assert tristram_levine(d, Fraction(9, 10)) == -2
    assert tristram_levine(d, Fraction(3, 10)) == 0


def test_tristram_levine_pretzel_3_3_3():
    d = pretzel(3, 3, 3)
    assert tristram_levine(d, Fraction(9, 10)) == -2
    assert tristram_levine(d, Fraction(1, 20)) == 0
    t = 1 / (2 * sp.sqrt(7))
    assert tristram_levine(d, RealAlgebraic.from_expr(t)) == -1


def test_tristram_levine_exact_psi_expression():
    d = named("torus-2-5")
    assert tristram_levine(d, sp.exp(sp.I * sp.pi / 3)) == tristram_levine(d, Fraction(1, 2))


def test_float_near_jump_refused():
    d = named("torus-2-5")
    a = float((1 + sp.sqrt(5)) / 4)
    with pytest.raises(NearJumpPoint):
        tristram_levine(d, _psi(a))
    with pytest.raises(NearJumpPoint):
        tristram_levine(d, _psi(a + 5e-10))
    assert tristram_levine(d, _psi(a + 1e-6)) == -4


def test_tristram_levine_bad_psi():
    with pytest.raises(ValueError):
        tristram_levine(named("torus-2-5"), complex(0.5, 0.5))


def test_tristram_levine_matches_numeric_oracle():
    samples = [Fraction(k, 9) for k in range(1, 9)]
    for _, d in table(8, links=False):
        if d.n == 0:
            continue
        a = seifert_matrix(d)
        for q in samples:
            assert tristram_levine(d, q) == numeric_tl(a, _omega_for(float(q)))


# -- linking, obstructions, fingerprints ------------------------------------


def test_linking_numbers(hopf):
    assert linking_matrix(hopf)[0][1] == 1
    assert linking_numbers(torus2(4)) == (2,)
    assert linking_numbers(unknot(2)) == (0,)
    assert linking_numbers(reverse_components(torus2(4), [1])) == (-2,)


def test_obstructions(trefoil):
    fig8 = obstruction_report(named("figure-eight"))
    assert fig8.amphicheiral_possible
    tre = obstruction_report(trefoil)
    assert not tre.amphicheiral_possible and not tre.slice_possible
    stevedore = twist_knot(2, "negative")
    assert obstruction_report(stevedore).slice_possible


def test_right_left_hopf_sum_amphicheiral_possible():
    d = connected_sum(named("hopf-right"), named("hopf-left"))
    assert signature(d) == 0
    assert sorted(linking_numbers(d)) == [-1, 0, 1]
    assert obstruction_report(d).amphicheiral_possible


def test_fingerprint_invariance_and_distinction(trefoil):
    kinked = reidemeister(trefoil, "R1+", Site(edge=2, side="right", sign=-1))
    assert fingerprint(kinked) == fingerprint(trefoil)
    assert fingerprint(mirror(trefoil)) != fingerprint(trefoil)
    assert fingerprint(unknot()) != fingerprint(trefoil)
    assert fingerprint(unknot(3)).is_trivial()
    assert fingerprint(unknot(2)).jones == trivial_jones(2)


def test_fingerprint_json_round_trip():
    fp = fingerprint(table_diagram("6^2_3"))
    assert type(fp).from_json(fp.to_json()) == fp
