from __future__ import annotations

import json

import pytest

from linkforge.catalog import Catalog, named, table
from linkforge.diagram import parse_pd
from linkforge.errors import CatalogMissing, UnknownTheorem
from linkforge.moves import change_crossing
from linkforge.tangle import torus2
from linkforge.verify import THEOREMS, VerifyReport, is_singular, tl_table, verify

SMALL = {
    "giller": 6,
    "murasugi": 6,
    "degree-positive": 7,
    "degree-one-negative": 6,
    "positive-signature": 7,
    "almost-positive-signature": 6,
    "unknotting-positive": 6,
    "tristram-levine-tables": 0,
}


def test_theorem_ids():
    assert set(THEOREMS) == set(SMALL) | {"two-almost-positive"}


@pytest.mark.parametrize("theorem", sorted(SMALL))
def test_small_campaigns_pass(theorem):
    rep = verify(theorem, SMALL[theorem])
    assert rep.checked > 0
    assert rep.passed, rep.to_text()


def test_reports_are_reproducible():
    a = verify("giller", 4, seed=3).to_json()
    b = verify("giller", 4, seed=3).to_json()
    assert a == b
    body = json.loads(a)
    assert body["schema"] == 1 and body["theorem"] == "giller"


def test_unknown_theorem():
    with pytest.raises(UnknownTheorem):
        verify("no-such-theorem")


def test_missing_catalog(tmp_path):
    with pytest.raises(CatalogMissing):
        verify("murasugi", 6, catalog=str(tmp_path / "missing.json"))


def test_campaign_over_saved_catalog(tmp_path):
    cat = Catalog()
    for name, d in table(6):
        cat.add_diagram(name, d)
    path = tmp_path / "cat.json"
    cat.save(path)
    rep = verify("degree-positive", 6, catalog=str(path))
    assert rep.passed and rep.checked > 0
    assert "given catalog" in rep.family


def test_violation_carries_replayable_pd():
    rep = VerifyReport("demo", "demo family")
    d = named("torus-2-5")
    rep.violate("t25", d, "example")
    assert parse_pd(rep.violations[0]["pd"]).canonical_form() == d.canonical_form()
    assert "t25" in rep.to_text()
    assert not rep.passed


def test_singular_predicate():
    # in the (2,n) diagram every crossing joins the same two Seifert circles
    d = change_crossing(torus2(5), 0)
    assert not is_singular(d, 0)
    # a Hopf link with one crossing changed: the other crossing shares the circles too
    assert not is_singular(change_crossing(torus2(2), 0), 0)
    # a kink crossing joins its circle to a private one
    from linkforge.moves import Site, reidemeister

    k = reidemeister(torus2(3), "R1+", Site(edge=1, sign=-1))
    kink = next(i for i, x in enumerate(k.crossings) if x.sign < 0)
    assert is_singular(k, kink)


def test_tl_table_shape():
    d, thresholds, plateaus = tl_table("torus-2-5")
    assert d.n == 5
    assert len(plateaus) == len(thresholds) + 1
    with pytest.raises(KeyError):
        tl_table("nothing")
