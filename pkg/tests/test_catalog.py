from __future__ import annotations

import pytest

from linkforge.catalog import Catalog, generated_families, named, positive_forms, positive_table, table, table_diagram
from linkforge.diagram import serialize_pd
from linkforge.errors import CatalogMissing
from linkforge.invariants import fingerprint, signature
from linkforge.moves import Site, reidemeister

from .conftest import TREFOIL_PD


def test_table_contents():
    rows = table()
    names = [n for n, _ in rows]
    assert len(rows) == 380
    assert names[:3] == ["2^2_1", "3_1", "4_1"]
    assert "10_165" in names and "9^3_21" in names
    assert all(d.n <= 10 for _, d in rows)
    assert all(d.mu == 1 for _, d in table(links=False))


def test_table_bound():
    assert all(d.n <= 6 for _, d in table(6))
    with pytest.raises(KeyError):
        table_diagram("11_1")


def test_positive_forms_are_positive():
    for _, d in table(7):
        for p in positive_forms(d):
            assert all(x.sign > 0 for x in p.crossings)


def test_positive_table_size():
    assert len(positive_table(10)) == 104


def test_named_diagrams():
    assert signature(named("right-trefoil")) == -2
    assert signature(named("left-trefoil")) == 2
    assert signature(named("6_2")) == -2
    assert named("8^3_10").mu == 3
    assert named("7_2").n == 7


def test_generated_families_within_bound():
    fam = generated_families(9)
    names = [n for n, _ in fam]
    assert "pretzel(1, 1, 1)" in names and "8^3_10" in names
    assert all(d.n <= 9 for _, d in fam)
    assert all(all(x.sign > 0 for x in d.crossings) for _, d in fam)


def test_dedup_trefoil_and_kink(tmp_path):
    t = named("right-trefoil")
    kinked = reidemeister(t, "R1+", Site(edge=1, sign=1))
    f = tmp_path / "links.pd"
    f.write_text(TREFOIL_PD + "\n" + serialize_pd(kinked) + "\n")
    assert len(Catalog.build([f])) == 1


def test_trefoil_and_figure_eight(tmp_path):
    f = tmp_path / "links.pd"
    f.write_text(TREFOIL_PD + "\n" + serialize_pd(named("figure-eight")) + "\n")
    cat = Catalog.build([f])
    assert len(cat) == 2
    assert cat.lookup(fingerprint(named("figure-eight"))).name == "links.pd:2"


def test_save_load_round_trip(tmp_path):
    cat = Catalog()
    for name, d in table(6):
        cat.add_diagram(name, d)
    p = tmp_path / "cat.json"
    cat.save(p)
    again = Catalog.load(p)
    assert [e.to_json() for e in again.entries] == [e.to_json() for e in cat.entries]
    assert again.to_json() == cat.to_json()


def test_load_missing(tmp_path):
    with pytest.raises(CatalogMissing):
        Catalog.load(tmp_path / "nope.json")


def test_schema_checked():
    with pytest.raises(ValueError):
        Catalog.from_json('{"schema": 99, "entries": []}')


def test_empty_catalog_index():
    assert Catalog().index_rows() == []
