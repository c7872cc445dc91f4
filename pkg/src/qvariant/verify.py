"""Residual checks in a solution's own basis, and a recurrence-solving oracle.

The operator maps each basis element into a short window of neighbouring
elements. Summing a truncated series therefore leaves a residual whose low
components vanish exactly; only components near the truncation order (and,
for monomial bases, a couple of positive powers) survive.

For the descending Pochhammer kinds the residual is divided by ``x`` before
projecting: ``x * phi_n`` expands into *every* lower element, whereas
``phi_n / x`` does not, so the band only shows up after that division.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple

from .equations import Family, ParamSet, ThreeTermOperator, apply_operator, build_operator
from .qalg import BasisDescriptor, BasisKind, LaurentPoly, basis_project, combine
from .solutions import SeriesSolution, SolutionId, construct, get_entry

__all__ = [
    "DEFAULT_WINDOW",
    "VerificationReport",
    "ResonanceError",
    "residual_shift",
    "residual_components",
    "verify_solution",
    "band_profile",
    "recurrence_solve",
    "verify_four_term_recurrence",
    "verify_symmetry",
    "verify_symmetry_B02",
    "verify_symmetry_B20",
]

DEFAULT_WINDOW = 6


class ResonanceError(ArithmeticError):
    """The leading band coefficient vanished while solving for a coefficient."""


def residual_shift(kind: BasisKind) -> int:
    """Power of ``x`` divided out of the residual before projecting."""
    return 1 if kind in (BasisKind.POCH_DESC, BasisKind.MIXED_DESC) else 0


def residual_components(op: ThreeTermOperator, P: Any, basis: BasisDescriptor, S: LaurentPoly,
                        M: int) -> Tuple[List[Any], LaurentPoly]:
    R = apply_operator(op, P, S).shift(-residual_shift(basis.kind))
    return basis_project(R, basis, M)


@dataclass
class VerificationReport:
    id: Optional[SolutionId]
    N: int
    window: int
    components: List[Fraction]
    overflow: LaurentPoly
    passed: bool
    first_nonzero_index: Optional[int]
    terminated: bool = False
    params: Optional[ParamSet] = field(default=None, repr=False)

    @property
    def components_nonzero(self) -> List[int]:
        return [m for m, c in enumerate(self.components) if c != 0]

    def to_json(self) -> dict:
        out = {
            "id": None if self.id is None else str(self.id),
            "N": self.N,
            "window": self.window,
            "pass": self.passed,
            "terminated": self.terminated,
            "first_nonzero_index": self.first_nonzero_index,
            "components_nonzero": self.components_nonzero,
            "overflow_degrees": sorted(self.overflow.degrees()),
        }
        if self.params is not None:
            out["params"] = self.params.to_dict()
        return out


def verify_solution(params: ParamSet, sol: SeriesSolution, w: int = DEFAULT_WINDOW,
                    op: Optional[ThreeTermOperator] = None) -> VerificationReport:
    """Check that residual components ``0 .. N - w`` vanish exactly.

    A terminated solution is a finite sum, so there every component and the
    overflow must vanish.
    """
    if w < 1:
        raise ValueError("window must be at least 1")
    op = op or build_operator(params)
    N = sol.N
    S = combine(sol.basis, sol.coeffs)
    comps, overflow = residual_components(op, sol.P, sol.basis, S, N + 2)
    nonzero = [m for m, c in enumerate(comps) if c != 0]
    first = nonzero[0] if nonzero else None
    terminated = sol.terminated_at is not None
    if terminated:
        ok = not nonzero and overflow == 0
    else:
        ok = first is None or first > N - w
    return VerificationReport(sol.id, N, w, comps, overflow, ok, first, terminated, params)


def band_profile(op: ThreeTermOperator, P: Any, basis: BasisDescriptor, N: int,
                 reach: int = DEFAULT_WINDOW) -> List[Tuple[List[Any], LaurentPoly]]:
    """Projection of the image of each ``phi_n``, ``n = 0..N``, onto ``phi_0 .. phi_{n+reach}``."""
    return [residual_components(op, P, basis, basis.element(n), n + reach) for n in range(N + 1)]


def recurrence_solve(params: ParamSet, P: Any, basis: BasisDescriptor, N: int,
                     w: int = DEFAULT_WINDOW) -> List[Fraction]:
    """Solve the banded recurrence for ``c_0 = 1, c_1 .. c_N``.

    The band ``[n + lo, n + hi]`` of each image is measured rather than
    assumed. Negative indices stand for overflow degrees (``x^1``, ``x^2``
    for monomial bases), which carry the first equations there.
    """
    op = build_operator(params)
    if N == 0:
        return [Fraction(1)]
    delta = basis.direction
    images = band_profile(op, P, basis, N, reach=w + 1)

    def comp(n: int, m: int) -> Any:
        comps, overflow = images[n]
        if m < 0:
            return overflow[delta * m]
        return comps[m] if m < len(comps) else 0

    lo = hi = None
    for n, (comps, overflow) in enumerate(images):
        idx = [m for m, c in enumerate(comps) if c != 0]
        idx += [delta * d for d in overflow.degrees() if delta * d < 0]
        if not idx or n == 0:
            continue
        lo = min(idx) - n if lo is None else min(lo, min(idx) - n)
        hi = max(idx) - n if hi is None else max(hi, max(idx) - n)
    if lo is None or hi is None:
        raise ResonanceError("operator annihilates every basis element")
    radius = max(-lo, hi)
    if radius > w:
        raise ValueError(f"measured band radius {radius} exceeds window {w}")
    coeffs: List[Fraction] = [Fraction(1)]
    for k in range(1, N + 1):
        m = k + lo
        lead = comp(k, m)
        if lead == 0:
            raise ResonanceError(f"leading band coefficient vanishes for c_{k}")
        acc = sum((coeffs[n] * comp(n, m) for n in range(k)), Fraction(0))
        coeffs.append(-acc / lead)
    return coeffs


def _poch_ascending_d2_term(params: ParamSet, a: Sequence[Any], n: int, confluent: bool) -> Any:
    q = params.q
    A1, A2, L1, t1, t2 = params.A1, params.A2, params.L1, params.t1, params.t2
    z = params.Lam * params.a1
    w = None if confluent else params.Lam * params.a2

    def at(k: int) -> Any:
        return a[k] if 0 <= k < len(a) else 0

    def den(k: int) -> Any:  # (1-q^{h1-l1+k})(1-q^{h2-l1+k} t2/t1)(1-q^k)
        qk = q**k
        return (1 - A1 / L1 * qk) * (1 - A2 * t2 / (L1 * t1) * qk) * (1 - qk)

    def num(k: int) -> Any:  # (1-q^{lambda+alpha1+k})(1-q^{lambda+alpha2+k})
        qk = q**k
        out = 1 - z * qk
        return out if w is None else out * (1 - w * qk)

    return (den(n + 1) * at(n + 1)
            - q * num(n) * at(n)
            - q**3 * (1 + 1 / q) * den(n) * at(n)
            + q**4 * (1 + 1 / q) * num(n - 1) * at(n - 1)
            + q**5 * den(n - 1) * at(n - 1)
            - q**6 * num(n - 2) * at(n - 2))


def verify_four_term_recurrence(params: ParamSet, coeffs: Sequence[Any]) -> bool:
    """Check the displayed recurrence for the ascending Pochhammer expansion at ``x = q^(l1-1/2) t1``.

    D2 parameter sets use the version with the ``(1 - q^(lambda+alpha2+n))``
    factors, C12 sets the confluent version without them. Indices past the
    end of ``coeffs`` are not checked.
    """
    if params.family not in (Family.D2, Family.C12):
        raise ValueError("the recurrence is displayed for D2 and C12 only")
    confluent = params.family is Family.C12
    return all(_poch_ascending_d2_term(params, coeffs, n, confluent) == 0
               for n in range(len(coeffs) - 1))


_SWAPS = {
    Family.B02: (("t1", "t2"), ("A1", "A2")),
    Family.B20: (("t1", "t2"), ("L1", "L2")),
}


def _swapped(params: ParamSet) -> ParamSet:
    changes = {}
    for x, y in _SWAPS[params.family]:
        changes[x], changes[y] = getattr(params, y), getattr(params, x)
    return params.with_(**changes)


def verify_symmetry(params: ParamSet, sid: Optional[SolutionId] = None, N: int = 8,
                    image: Optional[ParamSet] = None) -> bool:
    """Index-swap symmetry of the (0,2) and (2,0) equations.

    The operator must be unchanged under ``(t1, A1) <-> (t2, A2)`` (resp.
    ``(t1, L1) <-> (t2, L2)``). With a branched ``sid`` the swap must also map
    the ``(i, i')`` solution onto the ``(i', i)`` one. ``image`` replaces the
    swapped parameter set (to test a deliberately broken swap).
    """
    if params.family not in _SWAPS:
        raise ValueError("index-swap symmetry is defined for B02 and B20")
    other = _swapped(params) if image is None else image
    if not build_operator(params).same_as(build_operator(other)):
        return False
    if sid is None or sid.branch is None:
        return True
    get_entry(sid)
    flipped = SolutionId(sid.family, sid.label, (sid.branch[1], sid.branch[0]))
    a = construct(sid, other, N)
    b = construct(flipped, params, N)
    return a.P == b.P and a.basis == b.basis and a.coeffs == b.coeffs


def verify_symmetry_B02(params: ParamSet, sid: Optional[SolutionId] = None) -> bool:
    if params.family is not Family.B02:
        raise ValueError("B02 parameter set required")
    return verify_symmetry(params, sid)


def verify_symmetry_B20(params: ParamSet, sid: Optional[SolutionId] = None) -> bool:
    if params.family is not Family.B20:
        raise ValueError("B20 parameter set required")
    return verify_symmetry(params, sid)
