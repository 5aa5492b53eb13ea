import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3char2 import data
from k3char2.codes21 import (
    FULL,
    Code21,
    artin_invariant,
    build_code_B_hesse,
    check_k3_code_conditions,
    classify_words,
    code_automorphisms,
    code_isomorphism,
    collinear_f4,
    dk_code,
    f4_plane_points,
    format_enumerator,
    hesse_words,
    labels,
    orbit_decomposition,
    perm_from_cycles,
    preserves_classes,
    subcode_dk_f,
    weight,
    weight_enumerator,
    word,
    word_from_row,
    word_to_row,
)
from k3char2.errors import BadInput, NotAdmissible, TooLarge
from k3char2.families import dk_phi
from k3char2.permgroup import PermGroup

EXPECTED = data.load_json("codes/expected.json")


def test_word_encoding():
    w = word([1, 5, 21])
    assert labels(w) == [1, 5, 21]
    assert weight(w) == 3
    row = word_to_row(w)
    assert row == "100010000000000000001"
    assert word_from_row(row) == w


@pytest.mark.parametrize("name", ["A", "B", "C", "DK"])
def test_golden_code_invariants(name):
    c = Code21.from_rows(data.code_rows(name))
    exp = EXPECTED[name]
    assert c.dim == exp["dim"]
    assert format_enumerator(weight_enumerator(c)) == exp["enumerator"]
    assert list(classify_words(c).counts()) == exp["counts"]
    assert check_k3_code_conditions(c)
    assert artin_invariant(c) == 11 - exp["dim"]


def test_dk_code_is_the_line_code():
    phi = dk_phi()
    assert sorted(phi) == sorted(f4_plane_points())
    assert Code21.from_rows(data.code_rows("DK")) == dk_code(phi)


def test_inadmissible_code_is_rejected():
    c = Code21([FULL, word([1, 2, 3])])
    assert not check_k3_code_conditions(c)
    with pytest.raises(NotAdmissible):
        classify_words(c)


def test_words_refuse_to_enumerate_huge_codes():
    c = Code21(1 << i for i in range(13))
    with pytest.raises(TooLarge):
        c.words


@pytest.mark.parametrize("name, order", [("A", 1152), ("B", 432)])
def test_automorphism_orders(codes, name, order):
    g = code_automorphisms(codes[name])
    assert g.order == order
    assert all(codes[name].preserved_by(p) for p in g.generators)


def test_isomorphism_round_trip(codes):
    rng = random.Random(4)
    p = list(range(21))
    rng.shuffle(p)
    target = codes["A"].permuted(tuple(p))
    q = code_isomorphism(codes["A"], target)
    assert q is not None and codes["A"].permuted(q) == target


def test_types_are_pairwise_non_isomorphic(codes):
    assert code_isomorphism(codes["A"], codes["B"]) is None
    assert code_isomorphism(codes["B"], codes["C"]) is None
    assert code_isomorphism(codes["A"], codes["C"]) is None


def _quadruple(phi, triples):
    from itertools import combinations

    for f in combinations(range(21), 4):
        pts = [phi[i] for i in f]
        if sum(collinear_f4(*t) for t in combinations(pts, 3)) == triples:
            return [i + 1 for i in f]


@pytest.mark.parametrize("triples, expected", [(0, "A"), (1, "B"), (4, "C")])
def test_subcodes_of_dk(codes, triples, expected):
    phi = dk_phi()
    f = _quadruple(phi, triples)
    sub = subcode_dk_f(phi, f)
    assert sub.dim == 9
    assert code_isomorphism(sub, codes[expected]) is not None


def test_subcode_needs_four_points():
    with pytest.raises(BadInput):
        subcode_dk_f(dk_phi(), [1, 2, 3])


def test_hesse_construction(codes):
    hw = hesse_words()
    assert len(hw.linear) == 9 and len(hw.type_i) == 12 and len(hw.type_ii) == 54
    built = build_code_B_hesse()
    assert built.dim == 9
    assert built == codes["B"]
    cls = classify_words(built)
    assert set(hw.linear.values()) == cls.linear
    assert set(hw.type_i.values()) | set(hw.type_ii.values()) == cls.quadratic


def test_hesse_words_match_tables():
    tables = data.family_tables("B")
    hw = hesse_words()
    for key, entry in tables["quadratic_I"].items():
        assert word(entry["word"]) in hw.type_i.values(), key
    assert {word(e["word"]) for e in tables["quadratic_II"].values()} == set(hw.type_ii.values())


def test_orbit_decomposition_small_group():
    g = PermGroup(21, [perm_from_cycles([(1, 2, 3)])])
    words = [word([1]), word([2]), word([3]), word([4])]
    orbits = orbit_decomposition(g, words)
    assert sorted(len(o) for o in orbits) == [1, 3]


@settings(max_examples=50)
@given(st.sampled_from("AB"), st.data())
def test_automorphisms_preserve_word_classes(codes, name, data_):
    g = code_automorphisms(codes[name])
    p = data_.draw(st.sampled_from(g.elements()))
    assert preserves_classes(codes[name], p)
