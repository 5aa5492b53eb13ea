import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3char2.errors import DivisionByZero, Pole, ZeroInput
from k3char2.gf import field
from k3char2.mpoly import MPoly, format_mpoly, gcd, parse, radical
from k3char2.ratfun import RatFun
from k3char2.resultant import poly_resultant
from k3char2.unipoly import LAM, ONE, UniPoly, format_unipoly, resultant, squarefree_part

polys = st.lists(st.integers(0, 3), max_size=9).map(UniPoly.from_coeffs)
nonzero = polys.filter(lambda p: not p.is_zero())


def P(text):
    from k3char2.plane_geom import unipoly_from_str

    return unipoly_from_str(text)


class TestUniPoly:
    @given(polys, polys, polys)
    def test_ring_laws(self, a, b, c):
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a + a == UniPoly.from_coeffs([])

    @given(polys, nonzero)
    def test_divmod(self, a, b):
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.degree < b.degree

    @given(nonzero, nonzero, nonzero)
    def test_gcd_contains_common_factor(self, a, b, c):
        g = (a * c).gcd(b * c)
        assert (g % c.monic()).is_zero()
        assert g.lc == 1

    def test_squarefree_part(self):
        f = P("L^2(L+1)^3(L+w)")
        assert squarefree_part(f) == P("L(L+1)(L+w)")
        # purely inseparable input: L^4 + w = (L + w)^4 because w^4 = w
        assert squarefree_part(P("L^4+w")) == P("L+w")
        with pytest.raises(ZeroInput):
            squarefree_part(UniPoly.from_coeffs([]))

    @given(nonzero, nonzero)
    def test_resultant_vanishes_iff_common_factor(self, a, b):
        assert (resultant(a, b) == 0) == (a.gcd(b).degree > 0)

    def test_format_and_pairs_round_trip(self):
        f = P("wL^3+L+W")
        assert format_unipoly(f) == "w*L^3+L+W"
        assert UniPoly.from_pairs(f.to_pairs()) == f

    def test_eval_and_compose(self):
        fld = field(8)
        f, g = P("L^2+L+1"), P("L+w")
        for a in (0, 1, 7, 200):
            assert f.compose(g).eval_raw(fld, a) == f.eval_raw(fld, g.eval_raw(fld, a))
        # the roots of L^2+L+1 are the primitive cube roots of unity
        assert f.eval_raw(fld, fld.omega) == 0


class TestRatFun:
    def test_reduction_and_monic_denominator(self):
        r = RatFun(P("L^2+L"), P("wL+w"))
        assert r.den == ONE and r.num == P("WL")

    def test_substitute(self):
        r = RatFun(LAM, LAM + ONE)
        s = RatFun(ONE, LAM)
        # (1/L) / (1/L + 1) = 1/(1+L)
        assert r.substitute(s) == RatFun(ONE, LAM + ONE)

    def test_pole_and_zero_division(self):
        with pytest.raises(DivisionByZero):
            RatFun(ONE, UniPoly.from_coeffs([]))
        with pytest.raises(Pole):
            RatFun(ONE, LAM)(field(8)(0))

    @settings(max_examples=60)
    @given(nonzero, nonzero, st.integers(2, 255))
    def test_evaluation_is_a_homomorphism(self, a, b, alpha):
        fld = field(8)
        r = RatFun(a, b)
        if b.eval_raw(fld, alpha) == 0:
            return
        assert r.eval_raw(fld, alpha) == fld.div(a.eval_raw(fld, alpha), b.eval_raw(fld, alpha))


class TestMPoly:
    names = ("J", "K")

    def test_parse_and_format(self):
        p = parse("J^2K + wJ + (K+1)^2", self.names)
        assert format_mpoly(p, order="grlex") == "J^2*K+K^2+w*J+1"

    def test_gcd_and_radical(self):
        a = parse("J+K", self.names)
        b = parse("JK+1", self.names)
        c = parse("J+w", self.names)
        assert gcd(a * b, a * c) == a
        assert radical(a * a * b) == (a * b).monic()
        assert radical(a * a * a * a) == a  # the fourth power is a square of a square

    def test_strip_monomial(self):
        p = parse("J^2K(J+K+1)", self.names)
        assert p.strip_monomial() == parse("J+K+1", self.names)

    def test_divides_and_exquo(self):
        a = parse("J+K", self.names)
        b = parse("J^3+wK", self.names)
        assert a.divides(a * b)
        assert (a * b).exquo(a) == b
        assert not a.divides(b)

    def test_rename(self):
        p = parse("J^2+K", self.names)
        q = p.rename(("J", "K", "M"), mapping=[1, 2])
        assert q == parse("K^2+M", ("J", "K", "M"))


class TestResultant:
    def test_linear_elimination(self):
        names = ("X", "Y", "Z")
        f = parse("X+Y", names)
        g = parse("Y+Z^2", names)
        # Y = X from the first equation, so X + Z^2 = 0
        assert poly_resultant(f, g, "Y").monic() == parse("X+Z^2", names)

    def test_common_factor_gives_zero(self):
        names = ("X", "Y")
        f = parse("(X+Y)(X+1)", names)
        g = parse("(X+Y)(Y+w)", names)
        assert not poly_resultant(f, g, "Y")

    def test_zero_input(self):
        with pytest.raises(ZeroInput):
            poly_resultant(MPoly.const(("X", "Y"), 0), parse("X", ("X", "Y")), "X")
