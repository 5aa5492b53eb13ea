import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3char2 import data
from k3char2.codes21 import labels, weight, word
from k3char2.cremona_engine import (
    QUINTIC_MONOMIALS,
    apply_cremona,
    center_orbits,
    classify_image,
    correspondence_of_center,
    enumerate_centers,
    gram_matrix,
    is_center,
    n_subgroup,
    ns_action,
    preserves_gram,
    quintic_system,
    singular_rows,
)
from k3char2.errors import BadWeight, DegenerateCenter
from k3char2.families import FamilyType, gamma, sample_alphas

EXAMPLE_CENTER = word([1, 4, 6, 9, 12, 20])


def test_is_center(codes):
    assert is_center(codes["A"], EXAMPLE_CENTER)
    # P17..P21 lie on one line, so any six points containing them fail
    assert not is_center(codes["A"], word([1, 17, 18, 19, 20, 21]))
    with pytest.raises(BadWeight):
        is_center(codes["A"], word([1, 2, 3]))


@pytest.mark.parametrize("t, count", [("A", 1644), ("B", 1374), ("C", 2224)])
def test_center_counts(codes, t, count):
    centers = enumerate_centers(codes[t])
    assert len(centers) == count
    assert all(weight(c) == 6 for c in centers)


@pytest.mark.parametrize("t, order", [("A", 576), ("B", 216), ("C", 11520)])
def test_n_subgroup_orders(t, order):
    assert n_subgroup(t).order == order


@pytest.mark.parametrize("t", ["A", "B", "C"])
def test_orbit_sizes(t):
    golden = data.orbit_table()["families"][t]
    sizes = sorted(len(o) for o in center_orbits(t))
    assert sizes == sorted(o["size"] for o in golden["orbits"])
    assert sum(sizes) == golden["centers"]


def test_quintic_system_dimension():
    sys_ = quintic_system(gamma("A"), EXAMPLE_CENTER)
    assert len(sys_.vectors) == 3
    forms = sys_.forms()
    cfg = gamma("A")
    for f in forms:
        for i in labels(EXAMPLE_CENTER):
            assert all(p.eval_at(cfg[i]).is_zero() for p in f.partials())


def test_quintic_system_over_a_field(codes):
    alpha = sample_alphas(8, 1, seed=2)[0]
    cfg = gamma("B", m=8, alpha=alpha)
    c = enumerate_centers(codes["B"])[0]
    sys_ = quintic_system(cfg, c)
    for i in labels(c):
        for row in singular_rows(cfg.dom, cfg[i].coords):
            for v in sys_.vectors:
                acc = 0
                for a, b in zip(row, v):
                    acc ^= cfg.dom.mul(a, b)
                assert acc == 0
    assert len(QUINTIC_MONOMIALS) == 21


def test_collinear_center_is_degenerate():
    with pytest.raises(DegenerateCenter):
        quintic_system(gamma("A"), word([1, 17, 18, 19, 20, 21]))


def test_image_of_example_center_has_type_a():
    alpha = sample_alphas(8, 1, seed=4)[0]
    img = apply_cremona(gamma("A", m=8, alpha=alpha), EXAMPLE_CENTER)
    assert img.points.distinct()
    assert sorted(img.sources) == list(range(1, 22))
    t, _, counts = classify_image(img.points)
    assert t is FamilyType.A and counts == (13, 28)


def test_correspondence_of_example_center():
    res = correspondence_of_center("A", EXAMPLE_CENTER)
    assert res.target is FamilyType.A
    j = res.to_json()
    assert j["center"] == [1, 4, 6, 9, 12, 20]
    assert j["relation"] == "J^3*K^2+J^2*K^3+J^2*K^2+J*K+1"
    assert not res.diagonal


def test_ns_action_shape():
    m = ns_action(EXAMPLE_CENTER)
    assert m.shape == (22, 22)
    assert preserves_gram(m)
    assert np.array_equal(gram_matrix().diagonal()[:21], -2 * np.ones(21))


@settings(max_examples=60)
@given(st.sets(st.integers(1, 21), min_size=6, max_size=6))
def test_ns_action_is_an_involution(center):
    m = ns_action(word(center))
    assert np.array_equal(m @ m, np.eye(22, dtype=np.int64))
