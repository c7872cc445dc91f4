from fractions import Fraction as F

import pytest
from hypothesis import given

from qvariant.equations import Family, ParamSet, ThreeTermOperator, build_operator
from qvariant.gauge import (
    Direction,
    GaugeFactor,
    Side,
    b02_to_b20_params,
    b20_to_b02_params,
    c12_to_c21_params,
    c21_to_c12_params,
    check_correspondence_B02_B20,
    check_correspondence_C12_C21,
    check_gauge_partner,
    gauge_equation,
    gauge_partner,
    gauge_series,
    gauged_residual_identity,
    natural_gauge_factor,
    series_roundtrip,
)
from qvariant.qalg import BasisKind, LaurentPoly
from qvariant.solutions import CATALOG, SolutionId, construct
from qvariant.verify import verify_solution

from conftest import draw, param_sets

x = LaurentPoly({1: 1})
KUMMER = SolutionId.parse("C12:T31-ii")


class TestEquationMove:
    def test_a_side(self):
        a, q = F(2, 5), F(1, 4)
        B, C = x * 3 + 1, x - F(1, 2)
        op = ThreeTermOperator((1 - x * a) * (x - 3), B, C, q)
        moved = gauge_equation(op, a, Side.A)
        assert moved.A == x - 3 and moved.B == B and moved.C == (1 - x * (a * q)) * C

    def test_roundtrip(self):
        p = draw(Family.C12, "gauge")
        op = build_operator(p)
        a = 1 / (p.A1 * p.s * p.t1)
        there = gauge_equation(op, a, Side.A)
        back = gauge_equation(there, a * p.q, Side.C)
        assert back.same_as(op)

    def test_not_divisible(self):
        op = build_operator(draw(Family.C12, "gauge"))
        with pytest.raises(ValueError, match="does not divide"):
            gauge_equation(op, F(1234567), Side.A)

    def test_zero_alpha(self):
        with pytest.raises(ValueError):
            GaugeFactor(F(0), Direction.ATTACH)

    @given(param_sets(Family.D2))
    def test_every_root_moves_both_ways(self, p):
        op = build_operator(p)
        for a in (1 / (p.A1 * p.s * p.t1), 1 / (p.A2 * p.s * p.t2)):
            assert gauge_equation(gauge_equation(op, a, Side.A), a * p.q, Side.C).same_as(op)
        for a in (p.s / (p.L1 * p.t1), p.s / (p.L2 * p.t2)):
            assert gauge_equation(gauge_equation(op, a, Side.C), a / p.q, Side.A).same_as(op)


class TestSeriesMove:
    def test_inverse_factor(self):
        q = F(1, 9)
        gf = GaugeFactor(F(3), Direction.ATTACH)
        assert gf.inverse(q) == GaugeFactor(F(1, 3), Direction.DETACH)
        assert gf.inverse(q).inverse(q) == gf

    def test_kummer_entry_factor(self):
        # dividing by (q^(-l1+1/2) x / t1; q)_inf, i.e. the ATTACH factor at q^(-l1-1/2)/t1 undone
        p = draw(Family.C12, "series")
        sol = construct(KUMMER, p, 16)
        gf = natural_gauge_factor(build_operator(p), sol)
        assert gf == GaugeFactor(1 / (p.s * p.L1 * p.t1), Direction.ATTACH).inverse(p.q)

    def test_identity_generic(self):
        p = draw(Family.C12, "series")
        sol = construct(KUMMER, p, 16)
        op = build_operator(p)
        gf = natural_gauge_factor(op, sol)
        assert gauged_residual_identity(op, sol, gf)
        assert series_roundtrip(sol, gf)

    def test_terminating_gauged_series_solves_moved_equation(self):
        p = draw(Family.C12, "series")
        p = p.with_(a1=1 / (p.q**3 * p.Lam))
        sol = construct(KUMMER, p, 16)
        op = build_operator(p)
        gf = natural_gauge_factor(op, sol)
        u = gauge_series(sol, gf, 16)
        assert u.basis.kind is BasisKind.MONOMIAL_ASC
        moved = gauge_equation(op, gf.alpha, gf.side)
        rep = verify_solution(p, u, op=moved)
        assert rep.passed and rep.first_nonzero_index > 10

    def test_descending_refused(self):
        p = draw(Family.C12, "series")
        sol = construct(SolutionId.parse("C12:T31-i"), p, 4)
        with pytest.raises(ValueError, match="ascending"):
            gauge_series(sol, GaugeFactor(F(1), Direction.ATTACH))

    @pytest.mark.parametrize(
        "sid",
        [sid for e in CATALOG if e.verifiable and e.kind in (BasisKind.POCH_ASC, BasisKind.MIXED_ASC)
         for sid in e.ids()],
        ids=str,
    )
    def test_every_ascending_entry(self, sid):
        p = draw(sid.family, "ascending")
        sol = construct(sid, p, 12)
        op = build_operator(p)
        gf = natural_gauge_factor(op, sol)
        assert gauged_residual_identity(op, sol, gf) and series_roundtrip(sol, gf)


class TestCorrespondence:
    @given(param_sets(Family.C12))
    def test_c12_c21(self, p):
        assert check_correspondence_C12_C21(p)

    @given(param_sets(Family.B02))
    def test_b02_b20(self, p):
        assert check_correspondence_B02_B20(p)

    def test_perturbed_tilde_a1(self):
        p = draw(Family.C12, "corr")
        t = c12_to_c21_params(p)
        assert not check_correspondence_C12_C21(p, t.with_(a1=t.a1 * 2))

    def test_single_move(self):
        assert not check_correspondence_B02_B20(draw(Family.B02, "corr"), moves=1)

    @given(param_sets(Family.C12))
    def test_c12_map_roundtrip(self, p):
        assert c21_to_c12_params(c12_to_c21_params(p)) == p

    @given(param_sets(Family.B02))
    def test_b02_map_roundtrip(self, p):
        assert b20_to_b02_params(b02_to_b20_params(p)) == p

    def test_tilde_a1_example(self):
        s = F(2, 3)
        p = ParamSet(family=Family.B02, q=s * s, s=s, t1=F(1), t2=F(2), A1=F(3), A2=F(5), a1=s, Lam=F(1))
        assert b02_to_b20_params(p).a1 == s

    def test_index_map(self):
        p = draw(Family.C12, "corr")
        t = c12_to_c21_params(p)
        assert (t.L1, t.L2, t.A1) == (p.L1, p.A2, p.A1)
        assert t.a1 * p.a1 == p.q * p.A1 / (p.L1 * p.Lam**2)


class TestPartners:
    @pytest.mark.parametrize("sid", ["C12:P63-g2", "C21:P63-g3"])
    def test_confluent_as_displayed(self, sid):
        s = SolutionId.parse(sid)
        assert check_gauge_partner(s, draw(s.family, "partner"))

    @pytest.mark.parametrize("sid", ["B02:P65-g2", "B20:P65-g3"])
    def test_biconfluent_displayed_symbol_differs(self, sid):
        s = SolutionId.parse(sid)
        p = draw(s.family, "partner")
        assert not check_gauge_partner(s, p, printed=True)
        assert check_gauge_partner(s, p, printed=False)

    def test_partner_lookup(self):
        p = draw(Family.B20, "partner")
        sid, mapped = gauge_partner(SolutionId.parse("B20:P65-g3"), p)
        assert str(sid) == "B02:T41-i" and mapped.family is Family.B02
        with pytest.raises(KeyError):
            gauge_partner(KUMMER, draw(Family.C12, "partner"))
