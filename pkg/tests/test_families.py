import random

import pytest

from k3char2.codes21 import code_automorphisms
from k3char2.errors import BadInput, NotInStratum
from k3char2.families import (
    FamilyType,
    code_of_type,
    conic_from_string,
    gamma,
    j_function,
    j_invariant,
    parse_at,
    recover_lambda,
    roots_in_f4,
    sample_alphas,
    sextic,
    verify_tables,
    verify_zero_scheme,
)
from k3char2.gf import field
from k3char2.plane_geom import collinear, conic_is_singular, unipoly_from_str
from k3char2.unipoly import LAM


@pytest.mark.parametrize("t", ["A", "B", "C", "DK"])
def test_symbolic_points_are_distinct(t):
    assert gamma(t).distinct()


@pytest.mark.parametrize("t", ["A", "B", "C", "DK"])
def test_partials_vanish_on_the_configuration(t):
    cfg = gamma(t)
    for p in sextic(t).partials():
        assert all(p.eval_at(pt).is_zero() for pt in cfg)


def test_zero_scheme_report_for_dk():
    rep = verify_zero_scheme(sextic("DK"), gamma("DK"))
    assert rep.verified
    assert rep.oracle_zero_count == 21
    assert rep.to_json()["verified"] is True


def test_wrong_sextic_fails_the_vanishing_check():
    rep = verify_zero_scheme(sextic("A"), gamma("B"))
    assert not rep.partials_vanish and not rep.verified


def test_table_linear_word_example():
    cfg = gamma("A")
    # P17, P18, P19 of type A lie on Y = 0
    assert collinear(cfg[17], cfg[18], cfg[19])


@pytest.mark.parametrize("t", ["A", "B", "C"])
def test_tables_are_reproduced(t):
    rep = verify_tables(t)
    assert rep.passed, rep.failures[:3]
    assert rep.checked > 0


def test_conic_parsing_and_singularity():
    q = conic_from_string("X^2+Y^2+XY+(L^2+L+1)Z^2")
    assert not conic_is_singular(q)
    assert conic_is_singular(conic_from_string("XY"))
    with pytest.raises(BadInput):
        conic_from_string("X^3")


def test_roots_in_f4():
    assert roots_in_f4(unipoly_from_str("L^2+L+1"))
    assert roots_in_f4(unipoly_from_str("L^3(L+w)^2"))
    assert not roots_in_f4(unipoly_from_str("L^2+L+w"))


@pytest.mark.parametrize("t", ["A", "B", "C"])
def test_recover_lambda_on_the_normal_form(t):
    assert recover_lambda(gamma(t), t)[1:] == (LAM, "+")


def test_recover_lambda_rejects_the_wrong_type():
    with pytest.raises(NotInStratum):
        recover_lambda(gamma("A"), "C")


@pytest.mark.parametrize("t", ["A", "B", "C"])
def test_relabeling_by_automorphisms_keeps_j(t):
    rng = random.Random(7)
    els = code_automorphisms(code_of_type(t)).elements()
    for alpha in sample_alphas(8, 5, seed=5):
        cfg = gamma(t, m=8, alpha=alpha)
        for s in rng.sample(els, 4):
            _, lam2, _ = recover_lambda(cfg.relabel(s), t)
            assert j_invariant(t, lam2, m=8) == j_invariant(t, alpha, m=8)


def test_j_functions():
    assert str(j_function("A")) == "(L^6+L^5+L^3+L+1)/(L^4+L^2)"
    with pytest.raises(BadInput):
        j_function("DK")


def test_parse_at():
    fld = field(8)
    assert parse_at("omega") == fld.omega
    assert parse_at("omegabar") == fld.omega ^ 1
    assert parse_at("0x10") == 16
    with pytest.raises(BadInput):
        parse_at("999")


def test_sample_alphas_avoid_f4():
    fld = field(8)
    sub = {fld.from_f4(c) for c in range(4)}
    got = sample_alphas(8, 30, seed=9)
    assert len(set(got)) == 30 and not sub & set(got)
    assert got == sample_alphas(8, 30, seed=9)


def test_family_type_values():
    assert [t.value for t in FamilyType] == ["A", "B", "C", "DK"]
