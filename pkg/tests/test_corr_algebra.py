import pytest

from k3char2 import data
from k3char2.corr_algebra import (
    Catalog,
    Correspondence,
    bipoly,
    bipoly_from_pairs,
    bipoly_to_pairs,
    canonicalize,
    compose,
    compose_names,
    composite_poly,
    default_catalog,
    split,
    swap,
    transpose,
    verify_relation_table,
)
from k3char2.errors import EndpointMismatch, UnknownComponent, ZeroInput


@pytest.fixture(scope="module")
def cat():
    return default_catalog()


def test_canonical_form():
    p = bipoly("J^2K(J+K)^2")
    assert canonicalize(p) == bipoly("J+K")
    assert canonicalize(bipoly("wJ+wK+w")) == bipoly("J+K+1")
    with pytest.raises(ZeroInput):
        canonicalize(bipoly("0"))


def test_pairs_round_trip():
    p = bipoly("J^4+J^2K+JK^2+JK+K")
    pairs = bipoly_to_pairs(p)
    assert pairs[0] == [[4, 0], 1]
    assert bipoly_from_pairs(pairs) == p


def test_catalog_contents(cat):
    assert len(cat) == 19
    assert cat.pairwise_distinct()
    assert {"Delta_A", "Delta_B", "Delta_C"} <= set(cat)
    assert set(cat.between("A", "B")) == {"AB1", "AB2"}
    for name in ("AA1", "AA2", "BB1", "CC1"):
        assert transpose(cat[name]).poly == cat[name].poly


def test_transpose_is_swap(cat):
    assert cat["BA1"].poly == canonicalize(swap(cat["AB1"].poly))
    assert cat.name_of(transpose(cat["AC2"])) == "CA2"


def test_diagonal_is_neutral(cat):
    for name in ("AB1", "BC2", "CA1"):
        d = cat[name]
        assert compose_names(f"Delta_{d.source}", name) == [name]
        assert compose_names(name, f"Delta_{d.target}") == [name]


def test_example_relation(cat):
    assert compose_names("AA1", "AA1") == ["AA2", "Delta_A"]


def test_endpoint_mismatch(cat):
    with pytest.raises(EndpointMismatch):
        composite_poly(cat["AB1"], cat["AC1"])


def test_unknown_component_is_reported(cat):
    small = Catalog({"AA1": cat["AA1"]})
    poly = composite_poly(small["AA1"], small["AA1"])
    with pytest.raises(UnknownComponent):
        split(poly, "A", "A", small)


def test_correspondence_validation():
    with pytest.raises(ValueError):
        Correspondence("A", "DK", bipoly("J+K"))
    d = Correspondence.of("A", "B", "wJ+wK")
    assert d.poly == bipoly("J+K")
    assert Correspondence.diagonal("C").is_diagonal()
    assert d.to_json()["text"] == "J+K"


def test_relation_table_subset(cat):
    rels = data.relations()["relations"][:10]
    rep = verify_relation_table(cat, rels)
    assert rep.passed and rep.matched == 10
    assert rep.to_json()["closed"] is None


def test_wrong_expectation_is_a_mismatch(cat):
    rep = verify_relation_table(cat, [{"left": "AA1", "right": "AA1", "result": ["AA1"]}])
    assert not rep.passed
    assert rep.mismatches[0]["got"] == ["AA2", "Delta_A"]


def test_compose_returns_sorted_names(cat):
    names = compose(cat["AB1"], cat["BA1"], cat)
    assert names == sorted(names)
    assert all(cat[n].source == "A" and cat[n].target == "A" for n in names)
