from fractions import Fraction as F

import pytest
from hypothesis import given

from qvariant.equations import Family, build_operator
from qvariant.qalg import BasisKind
from qvariant.solutions import CATALOG, SolutionId, construct
from qvariant.verify import (
    ResonanceError,
    band_profile,
    recurrence_solve,
    residual_shift,
    verify_four_term_recurrence,
    verify_solution,
    verify_symmetry,
    verify_symmetry_B02,
    verify_symmetry_B20,
)

from conftest import draw, param_sets

KUMMER = SolutionId.parse("C12:T31-ii")


class TestResidual:
    def test_ascending_generic(self):
        p = draw(Family.C12, "residual")
        rep = verify_solution(p, construct(KUMMER, p, 16), 6)
        assert rep.passed and all(c == 0 for c in rep.components[:11])
        assert rep.first_nonzero_index == 16

    def test_constant_solution(self, c12_unit):
        rep = verify_solution(c12_unit, construct(KUMMER, c12_unit, 16))
        assert rep.passed and rep.terminated and rep.components_nonzero == []
        assert rep.overflow.is_zero()

    def test_perturbed_coefficient(self):
        p = draw(Family.C12, "residual")
        sol = construct(KUMMER, p, 16)
        bad = sol.with_coeffs(sol.coeffs[:3] + [sol.coeffs[3] + 1] + sol.coeffs[4:])
        rep = verify_solution(p, bad, 6)
        assert not rep.passed and rep.first_nonzero_index <= 6

    def test_window_must_be_positive(self):
        p = draw(Family.C12, "residual")
        with pytest.raises(ValueError):
            verify_solution(p, construct(KUMMER, p, 4), 0)

    def test_report_json(self):
        p = draw(Family.C12, "residual")
        out = verify_solution(p, construct(KUMMER, p, 8)).to_json()
        assert out["id"] == "C12:T31-ii" and out["pass"] is True
        assert out["params"]["family"] == "C12"

    def test_shift_only_for_descending_pochhammer(self):
        assert residual_shift(BasisKind.POCH_DESC) == residual_shift(BasisKind.MIXED_DESC) == 1
        assert residual_shift(BasisKind.MONOMIAL_DESC) == residual_shift(BasisKind.POCH_ASC) == 0

    @given(param_sets(Family.B20))
    def test_random_b20(self, p):
        for sid in ("B20:T53-i:21", "B20:T53-ii"):
            try:
                sol = construct(SolutionId.parse(sid), p, 12)
            except ZeroDivisionError:
                continue
            assert verify_solution(p, sol).passed


class TestBand:
    @pytest.mark.parametrize("sid", ["C12:T31-ii", "B02:T41-ii:12", "C21:T52-ii", "D2:P21-i"])
    def test_images_are_banded(self, sid):
        s = SolutionId.parse(sid)
        p = draw(s.family, "band")
        sol = construct(s, p, 8)
        for n, (comps, _) in enumerate(band_profile(build_operator(p), sol.P, sol.basis, 8)):
            nz = [m for m, c in enumerate(comps) if c != 0]
            assert max(nz) - n <= 2 and n - min(nz) <= 2


class TestRecurrenceOracle:
    @pytest.mark.parametrize("sid", [sid for e in CATALOG if e.verifiable for sid in e.ids()], ids=str)
    def test_reproduces_closed_form(self, sid):
        p = draw(sid.family, "oracle", 3)
        sol = construct(sid, p, 16)
        assert recurrence_solve(p, sol.P, sol.basis, 16) == sol.coeffs

    def test_starts_at_one(self):
        p = draw(Family.D2, "oracle")
        sol = construct(SolutionId.parse("D2:P21-ii:12"), p, 2)
        assert recurrence_solve(p, sol.P, sol.basis, 0) == [1]

    def test_resonance_reported(self):
        p = draw(Family.C12, "oracle")
        p = p.with_(A1=p.L1 / p.q)
        sol = construct(KUMMER, draw(Family.C12, "oracle"), 2)
        basis = type(sol.basis)(sol.basis.kind, p.q, p.L1 * p.t1 / p.s)
        with pytest.raises(ResonanceError):
            recurrence_solve(p, p.Lam, basis, 4)


class TestFourTermRecurrence:
    @given(param_sets(Family.D2))
    def test_d2(self, p):
        try:
            sol = construct(SolutionId.parse("D2:P21-ii:12"), p, 16)
        except ZeroDivisionError:
            return
        assert verify_four_term_recurrence(p, sol.coeffs)

    def test_confluent(self):
        p = draw(Family.C12, "four-term")
        assert verify_four_term_recurrence(p, construct(KUMMER, p, 16).coeffs)

    def test_sign_flip(self):
        p = draw(Family.D2, "four-term")
        coeffs = construct(SolutionId.parse("D2:P21-ii:12"), p, 16).coeffs
        coeffs[5] = -coeffs[5]
        assert not verify_four_term_recurrence(p, coeffs)

    def test_other_families_refused(self):
        with pytest.raises(ValueError):
            verify_four_term_recurrence(draw(Family.B02, "four-term"), [1])


class TestSymmetry:
    @given(param_sets(Family.B02))
    def test_b02(self, p):
        assert verify_symmetry_B02(p)

    def test_b02_branches_swap(self):
        p = draw(Family.B02, "sym")
        assert verify_symmetry_B02(p, SolutionId.parse("B02:T41-ii:12"))
        assert verify_symmetry_B02(p, SolutionId.parse("B02:T41-iii:21"))

    def test_b20(self):
        p = draw(Family.B20, "sym")
        assert verify_symmetry_B20(p)
        assert verify_symmetry_B20(p, SolutionId.parse("B20:T53-i:12"))

    def test_broken_swap(self):
        p = draw(Family.B02, "sym")
        image = p.with_(t1=p.t2 * F(3, 2), t2=p.t1, A1=p.A2, A2=p.A1)
        assert not verify_symmetry(p, image=image)

    def test_wrong_family(self):
        with pytest.raises(ValueError):
            verify_symmetry_B02(draw(Family.B20, "sym"))
