import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3char2.errors import DivisionByZero, FieldMismatch
from k3char2.gf import F4, MODULI, OMEGA, OMEGA_BAR, GF2m, field, gf_arith


def test_f4_tables():
    w, W = 2, 3
    assert F4.mul(w, w) == W
    assert F4.mul(w, W) == 1
    assert w ^ W == 1  # w + w^2 = 1
    assert OMEGA * OMEGA == OMEGA_BAR
    assert OMEGA + OMEGA_BAR == F4(1)


@pytest.mark.parametrize("m", sorted(MODULI))
def test_generator_is_primitive(m):
    fld = GF2m(m)
    seen = {fld.exp(k) for k in range(fld.order)}
    assert len(seen) == fld.order
    assert 0 not in seen


@pytest.mark.parametrize("m", [2, 4, 8, 12])
def test_f4_embeds_in_even_degree(m):
    fld = field(m)
    w = fld.omega
    assert fld.mul(w, fld.mul(w, w)) == 1 and w != 1
    assert fld.mul(w, w) ^ w == 1
    emb = [fld.from_f4(c) for c in range(4)]
    for a in range(4):
        for b in range(4):
            assert fld.mul(emb[a], emb[b]) == emb[F4.mul(a, b)]
            assert fld.to_f4(emb[a]) == a


def test_odd_degree_has_no_omega():
    assert not field(5).has_f4


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        field(8).inv(0)
    with pytest.raises(DivisionByZero):
        F4(1) / F4(0)


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatch):
        field(4)(3) + field(8)(3)


def test_gf_arith_dispatch():
    fld = field(8)
    a = fld(0x53)
    b = gf_arith("inv", a)
    assert gf_arith("mul", a, b) == fld(1)
    # x^8 = x^4 + x^3 + x^2 + 1 for the modulus 0x11D
    assert fld.pow(2, 8) == 0x1D
    assert gf_arith("add", a, a) == field(8)(0)
    with pytest.raises(ValueError):
        gf_arith("pow", a, b)


@settings(max_examples=100)
@given(st.integers(1, 255), st.integers(0, 600))
def test_pow_matches_repeated_multiplication(a, e):
    fld = field(8)
    acc = 1
    for _ in range(e % 20):
        acc = fld.mul(acc, a)
    assert fld.pow(a, e % 20) == acc
    assert fld.pow(a, e) == fld.pow(a, e % fld.order)


@given(st.integers(0, (1 << 12) - 1))
def test_frobenius_is_additive_and_sqrt_inverts_it(a):
    fld = field(12)
    assert fld.sqrt(fld.mul(a, a)) == a
    b = 0x5A5
    assert fld.mul(a ^ b, a ^ b) == fld.mul(a, a) ^ fld.mul(b, b)


def test_elements_enumeration():
    assert sorted(field(4).elements()) == list(range(16))
