import pytest

from k3char2.codes21 import code_automorphisms
from k3char2.errors import BadInput, Explosion, FieldMismatch
from k3char2.families import FamilyType, code_of_type, gamma, sample_alphas
from k3char2.group_verify import (
    EXPECTED_TAGS,
    FracLinear,
    Pgl3Group,
    gamma_group,
    gamma_group_action,
    is_code_automorphism,
    is_free,
    j_invariant_fixed,
    pgl_closure,
    stabilizer_A,
    stabilizer_B,
    stabilizes_configuration,
    stated_code_generators,
    verify_stabilizer,
)
from k3char2.linalg import FieldDomain
from k3char2.plane_geom import Pgl3


def test_closure_of_identity():
    e = Pgl3.identity(FieldDomain(8))
    g = pgl_closure([e])
    assert g.order == 1 and g.is_closed()


def test_closure_bound():
    dom = FieldDomain(4)
    gens = [Pgl3([[1, 1, 0], [0, 1, 0], [0, 0, 1]], dom), Pgl3([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dom),
            Pgl3([[2, 0, 0], [0, 1, 0], [0, 0, 1]], dom)]
    with pytest.raises(Explosion):
        pgl_closure(gens, bound=50)
    with pytest.raises(BadInput):
        pgl_closure([])


def test_stated_groups_have_the_right_orders():
    alpha = sample_alphas(8, 1, seed=6)[0]
    a = stabilizer_A(alpha)
    assert a.order == 96
    assert Pgl3Group(a.elements).is_closed()
    b = stabilizer_B()
    assert b.order == 18 and b.is_closed()


def test_stabilizes_configuration():
    alpha = sample_alphas(8, 1, seed=6)[0]
    cfg = gamma("A", m=8, alpha=alpha)
    assert stabilizes_configuration(stabilizer_A(alpha), cfg)
    dom = cfg.dom
    shear = Pgl3([[1, 0, 0], [0, 1, 0], [0, 5, 1]], dom)
    assert not stabilizes_configuration(Pgl3Group([shear]), cfg)
    with pytest.raises(FieldMismatch):
        stabilizes_configuration(stabilizer_A(alpha), gamma("A"))
    with pytest.raises(FieldMismatch):
        stabilizes_configuration(stabilizer_B(m=4), cfg)


def test_frac_linear():
    inv = FracLinear.from_strings("1", "L")
    plus = FracLinear.from_strings("L+1", "1")
    assert (inv @ inv).is_identity()
    assert (plus @ plus).is_identity()
    assert not (inv @ plus).is_identity()
    assert str(inv.as_ratfun()) == "(1)/(L)"
    with pytest.raises(BadInput):
        FracLinear(1, 1, 1, 1)
    with pytest.raises(BadInput):
        FracLinear.from_strings("L^2", "1")


@pytest.mark.parametrize("t, order, tag", [("A", 6, "S3"), ("B", 12, "A4"), ("C", 12, "AGL(1,4)")])
def test_gamma_groups(t, order, tag):
    g = gamma_group(t)
    assert g.order == order
    assert g.is_closed()
    assert g.structure_tag() == tag == EXPECTED_TAGS[FamilyType(t)]
    assert j_invariant_fixed(t, g)
    assert is_free(g)


def test_gamma_structure_statistics():
    a4 = gamma_group("B").order_statistics()
    assert a4 == {1: 1, 2: 3, 3: 8}
    assert not gamma_group("A").is_abelian()


def test_gamma_report_json():
    rep = gamma_group_action("A").to_json()
    assert rep["order"] == 6 and rep["free"] and rep["closed"]


@pytest.mark.parametrize("t", ["A", "B", "C"])
def test_stated_code_generators(t):
    code = code_of_type(t)
    gens = stated_code_generators(t)
    assert gens
    for name, perms in gens.items():
        assert all(is_code_automorphism(code, p) for p in perms), name


def test_stated_subgroup_sizes():
    assert len(stated_code_generators("A")["PG"]) == 288
    assert len(stated_code_generators("B")["Psi"]) == 432
    assert len(stated_code_generators("C")["LG"]) == 2880


@pytest.mark.parametrize("t", ["A", "B"])
def test_verify_stabilizer(t):
    alpha = sample_alphas(8, 1, seed=12)[0]
    rep = verify_stabilizer(t, alpha)
    assert rep.passed, rep.to_json()
    assert rep.code_order == code_automorphisms(code_of_type(t)).order
