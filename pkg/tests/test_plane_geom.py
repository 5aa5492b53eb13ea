import pytest

from k3char2.errors import BadInput, LineInConic
from k3char2.families import conic_from_string, gamma
from k3char2.linalg import POLY, FieldDomain
from k3char2.plane_geom import (
    Conic,
    Line,
    Pgl3,
    ProjPoint,
    collinear,
    conic_is_singular,
    conic_space,
    line_conic_tangent,
    line_through,
    meet,
    pgl3_from_frame,
    points_from_json,
    unipoly_from_str,
)

F4 = FieldDomain(2)


def pts(*rows, dom=F4):
    return points_from_json(rows, dom)


def test_canonical_scaling():
    p = ProjPoint([2, 2, 0], F4)
    assert p.coords == (1, 1, 0)
    assert p == ProjPoint([3, 3, 0], F4)
    with pytest.raises(BadInput):
        ProjPoint([0, 0, 0], F4)


def test_collinearity():
    a, b, c = pts(["1", "w", "0"], ["1", "W", "0"], ["0", "1", "0"])
    assert collinear(a, b, c)
    e1, e2, e3 = pts(["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"])
    assert not collinear(e1, e2, e3)


def test_line_and_meet():
    e1, e2, e3 = pts(["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"])
    z = line_through(e1, e2)
    assert z == Line([0, 0, 1], F4)
    assert meet(z, line_through(e2, e3)) == e2
    with pytest.raises(BadInput):
        line_through(e1, e1)


def test_conic_through_eight_points_of_type_a():
    cfg = gamma("A")
    # the quadratic word q114 of the type A tables
    from k3char2 import data
    from k3char2.codes21 import word

    entry = data.family_tables("A")["quadratic"]["q114"]
    basis = conic_space(cfg.subset(word(entry["word"])))
    assert len(basis) == 1
    assert basis[0] == conic_from_string("X^2+Y^2+LZ^2+XY+(L+1)ZX")


def test_conic_space_dimension_count():
    four = pts(["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"], ["1", "1", "1"])
    sols = conic_space(four)
    assert len(sols) == 2
    assert all(c.contains(p) for c in sols for p in four)


def test_singularity_examples():
    assert conic_is_singular(Conic([0, 0, 0, 1, 0, 0], F4))
    assert not conic_is_singular(Conic([1, 0, 0, 0, 1, 0], F4))
    q = conic_from_string("X^2+Y^2+XY+(L^2+L+1)Z^2")
    assert not conic_is_singular(q)
    w = FieldDomain(8).fld.omega
    assert conic_is_singular(q.specialize(8, w))


def test_tangency_examples():
    y0 = Line([0, 1, 0], F4)
    z0 = Line([0, 0, 1], F4)
    assert line_conic_tangent(y0, Conic([2, 3, 1, 0, 0, 0], F4))
    assert line_conic_tangent(z0, Conic([1, 0, 0, 0, 1, 0], F4))
    assert not line_conic_tangent(z0, Conic([0, 0, 1, 1, 0, 0], F4))
    with pytest.raises(LineInConic):
        line_conic_tangent(z0, Conic([0, 0, 0, 0, 1, 1], F4))


def test_frames():
    std = pts(["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"], ["1", "1", "1"])
    assert pgl3_from_frame(std, std) == Pgl3.identity(F4)
    perm = [std[1], std[2], std[0], std[3]]
    g = pgl3_from_frame(std, perm)
    assert g == Pgl3([[0, 0, 1], [1, 0, 0], [0, 1, 0]], F4)


def test_worked_example_frame():
    from k3char2 import data

    we = data.worked_example()
    m = Pgl3([[unipoly_from_str(c) for c in row] for row in we["frame_matrix"]], POLY)
    assert m.inverse() @ m == Pgl3.identity(POLY)


def test_pgl3_action_and_inverse():
    g = Pgl3([[1, 2, 0], [0, 1, 3], [1, 0, 2]], F4)
    p = ProjPoint([1, 3, 2], F4)
    assert g.inverse()(g(p)) == p
    with pytest.raises(BadInput):
        Pgl3([[1, 0, 0], [1, 0, 0], [0, 0, 1]], F4)
