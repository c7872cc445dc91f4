"""Moving a linear factor between the ``g(x/q)`` and ``g(qx)`` coefficients.

If ``y`` solves ``(1 - a x) A'(x) y(x/q) + B y + C y(qx) = 0`` then
``u = (a q x; q)_inf y`` solves ``A' u(x/q) + B u + (1 - a q x) C u(qx) = 0``
(A-side move, :data:`Direction.ATTACH`). Dividing by ``(a x; q)_inf`` moves a
factor ``(1 - a x)`` of ``C`` over to ``A`` as ``(1 - a x / q)`` (C-side
move, :data:`Direction.DETACH`).

Two equation pairs are related this way: the (1,2) and (2,1) confluent
equations by one move, and the (0,2) and (2,0) biconfluent equations by two.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Optional, Tuple

from .equations import (
    Family,
    ParamSet,
    ThreeTermOperator,
    apply_operator,
    build_operator,
    prefactor_scale,
)
from .qalg import (
    BasisDescriptor,
    BasisKind,
    LaurentPoly,
    combine,
    euler_expand,
    inv_euler_expand,
)
from .solutions import SeriesSolution, SolutionId, get_entry, raw_series

__all__ = [
    "Side",
    "Direction",
    "GaugeFactor",
    "gauge_equation",
    "gauge_series",
    "gauged_residual_identity",
    "natural_gauge_factor",
    "series_roundtrip",
    "c12_to_c21_params",
    "c21_to_c12_params",
    "b02_to_b20_params",
    "b20_to_b02_params",
    "correspondence_C12_C21",
    "correspondence_B02_B20",
    "check_correspondence_C12_C21",
    "check_correspondence_B02_B20",
    "gauge_partner",
    "check_gauge_partner",
]


class Side(str, enum.Enum):
    A = "A-side"
    C = "C-side"


class Direction(str, enum.Enum):
    ATTACH = "ATTACH"  # multiply by (alpha q x; q)_inf
    DETACH = "DETACH"  # divide by (alpha x; q)_inf


@dataclass(frozen=True)
class GaugeFactor:
    alpha: Fraction
    direction: Direction

    def __post_init__(self):
        if self.alpha == 0:
            raise ValueError("gauge factor alpha must be nonzero")

    @property
    def side(self) -> Side:
        return Side.A if self.direction is Direction.ATTACH else Side.C

    def inverse(self, q: Any) -> "GaugeFactor":
        """The move that undoes this one: ``(a q x; q)_inf`` is ``(a' x; q)_inf`` with ``a' = a q``."""
        if self.direction is Direction.ATTACH:
            return GaugeFactor(self.alpha * q, Direction.DETACH)
        return GaugeFactor(self.alpha / q, Direction.ATTACH)

    def expansion(self, q: Any, N: int) -> LaurentPoly:
        if self.direction is Direction.ATTACH:
            return euler_expand(self.alpha * q, q, N)
        return inv_euler_expand(self.alpha, q, N)


def _one_minus(c: Any) -> LaurentPoly:
    return LaurentPoly({0: 1, 1: -c})


def gauge_equation(op: ThreeTermOperator, alpha: Any, side: Side) -> ThreeTermOperator:
    if alpha == 0:
        raise ValueError("gauge factor alpha must be nonzero")
    q = op.q
    side = Side(side)
    if side is Side.A:
        try:
            A = op.A.divide_linear(alpha)
        except ValueError:
            raise ValueError(f"(1 - {alpha} x) does not divide the g(x/q) coefficient") from None
        return ThreeTermOperator(A, op.B, op.C * _one_minus(alpha * q), q)
    try:
        C = op.C.divide_linear(alpha)
    except ValueError:
        raise ValueError(f"(1 - {alpha} x) does not divide the g(qx) coefficient") from None
    return ThreeTermOperator(op.A * _one_minus(alpha / q), op.B, C, q)


def gauge_series(sol: SeriesSolution, gf: GaugeFactor, N: Optional[int] = None) -> SeriesSolution:
    """Multiply an ascending solution by the gauge factor, as a power series to degree ``N``.

    The result lives in the plain ascending monomial basis and keeps the
    prefactor ``x^mu``. Descending solutions are refused: their product with
    an Euler factor has no finite coefficients.
    """
    if sol.basis.direction != 1:
        raise ValueError(f"{sol.id}: gauge_series needs an ascending basis")
    N = sol.N if N is None else N
    q = sol.basis.q
    S = combine(sol.basis, sol.coeffs)
    prod = (S * gf.expansion(q, N)).truncate(0, N)
    coeffs = [prod[k] for k in range(N + 1)]
    basis = BasisDescriptor(BasisKind.MONOMIAL_ASC, q)
    return SeriesSolution(sol.id, sol.mu, sol.P, basis, coeffs).with_coeffs(coeffs)


def gauged_residual_identity(op: ThreeTermOperator, sol: SeriesSolution, gf: GaugeFactor,
                             N: Optional[int] = None) -> bool:
    """Check ``R_u(F S) = F R_y(S)`` through degree ``N`` for the truncated series ``S``.

    ``F`` is the gauge factor expansion, ``R_y`` the residual under ``op`` and
    ``R_u`` the residual under the moved operator. Holds exactly for any
    polynomial ``S``, which makes it a sharp test of the equation-level move.
    """
    N = sol.N if N is None else N
    q = op.q
    moved = gauge_equation(op, gf.alpha, gf.side)
    F = gf.expansion(q, N + 2)
    S = combine(sol.basis, sol.coeffs)
    u = (F * S).truncate(0, N + 2)
    lhs = apply_operator(moved, sol.P, u).truncate(None, N)
    rhs = (F * apply_operator(op, sol.P, S)).truncate(None, N)
    return lhs == rhs


def natural_gauge_factor(op: ThreeTermOperator, sol: SeriesSolution) -> GaugeFactor:
    """The move whose root is the scale ``c`` of an ascending Pochhammer basis.

    ``(x/c; q)_n`` bases sit at a root of ``C`` (C-side move) or, for the
    mixed kind, at a root of ``A`` (A-side move).
    """
    if sol.basis.kind not in (BasisKind.POCH_ASC, BasisKind.MIXED_ASC):
        raise ValueError(f"{sol.id}: no natural gauge factor for {sol.basis.kind.value}")
    alpha = 1 / sol.basis.c
    if op.C(1 / alpha) == 0:
        return GaugeFactor(alpha, Direction.DETACH)
    if op.A(1 / alpha) == 0:
        return GaugeFactor(alpha, Direction.ATTACH)
    raise ValueError(f"{sol.id}: basis scale {sol.basis.c} is not a root of A or C")


def series_roundtrip(sol: SeriesSolution, gf: GaugeFactor, N: Optional[int] = None) -> bool:
    """Gauging by ``gf`` and then by its inverse returns the truncated series."""
    N = sol.N if N is None else N
    back = gauge_series(gauge_series(sol, gf, N), gf.inverse(sol.basis.q), N)
    return combine(back.basis, back.coeffs) == combine(sol.basis, sol.coeffs).truncate(0, N)


# ---------------------------------------------------------------------------
# parameter maps
# ---------------------------------------------------------------------------

def c12_to_c21_params(p: ParamSet) -> ParamSet:
    """``l~1 = l1, l~2 = h2, h~1 = h1`` and ``a~1 a1 = q A1 / (L1 Lam^2)``."""
    if p.family is not Family.C12:
        raise ValueError("C12 parameter set required")
    return ParamSet(family=Family.C21, q=p.q, s=p.s, t1=p.t1, t2=p.t2, A1=p.A1, L1=p.L1, L2=p.A2,
                    a1=p.q * p.A1 / (p.L1 * p.Lam**2 * p.a1), Lam=p.Lam)


def c21_to_c12_params(p: ParamSet) -> ParamSet:
    if p.family is not Family.C21:
        raise ValueError("C21 parameter set required")
    return ParamSet(family=Family.C12, q=p.q, s=p.s, t1=p.t1, t2=p.t2, A1=p.A1, A2=p.L2, L1=p.L1,
                    a1=p.q * p.A1 / (p.L1 * p.Lam**2 * p.a1), Lam=p.Lam)


def b02_to_b20_params(p: ParamSet) -> ParamSet:
    """``l~i = h_i`` and ``a~1 a1 = q / Lam^2``."""
    if p.family is not Family.B02:
        raise ValueError("B02 parameter set required")
    return ParamSet(family=Family.B20, q=p.q, s=p.s, t1=p.t1, t2=p.t2, L1=p.A1, L2=p.A2,
                    a1=p.q / (p.Lam**2 * p.a1), Lam=p.Lam)


def b20_to_b02_params(p: ParamSet) -> ParamSet:
    if p.family is not Family.B20:
        raise ValueError("B20 parameter set required")
    return ParamSet(family=Family.B02, q=p.q, s=p.s, t1=p.t1, t2=p.t2, A1=p.L1, A2=p.L2,
                    a1=p.q / (p.Lam**2 * p.a1), Lam=p.Lam)


# ---------------------------------------------------------------------------
# equation-level correspondences
# ---------------------------------------------------------------------------

def _proportional(a: ThreeTermOperator, b: ThreeTermOperator) -> Tuple[bool, Optional[Fraction]]:
    """Compare after scaling by the ratio of leading ``g(x/q)`` coefficients."""
    da, db = a.A.max_degree, b.A.max_degree
    if da is None or db is None or da != db:
        return False, None
    k = b.A[db] / a.A[da]
    return a.scaled(k).same_as(b), k


def correspondence_C12_C21(p: ParamSet, tilde: Optional[ParamSet] = None):
    """Moved C12 operator, C21 operator, proportionality verdict and scalar."""
    op = build_operator(p)
    moved = gauge_equation(op, 1 / (p.A2 * p.s * p.t2), Side.A)
    target = build_operator(tilde or c12_to_c21_params(p))
    ok, k = _proportional(moved, target)
    return moved, target, ok, k


def correspondence_B02_B20(p: ParamSet, tilde: Optional[ParamSet] = None, moves: int = 2):
    op = build_operator(p)
    alphas = [1 / (p.A1 * p.s * p.t1), 1 / (p.A2 * p.s * p.t2)][:moves]
    moved = op
    for a in alphas:
        moved = gauge_equation(moved, a, Side.A)
    target = build_operator(tilde or b02_to_b20_params(p))
    ok, k = _proportional(moved, target)
    return moved, target, ok, k


def check_correspondence_C12_C21(p: ParamSet, tilde: Optional[ParamSet] = None) -> bool:
    """One A-side move by ``(q^(-h2+1/2) x / t2; q)_inf`` turns C12 into C21 at the mapped parameters."""
    return correspondence_C12_C21(p, tilde)[2]


def check_correspondence_B02_B20(p: ParamSet, tilde: Optional[ParamSet] = None,
                                 moves: int = 2) -> bool:
    """Two A-side moves (one per root of the ``g(x/q)`` coefficient) turn B02 into B20."""
    return correspondence_B02_B20(p, tilde, moves)[2]


# ---------------------------------------------------------------------------
# gauge-product catalog entries
# ---------------------------------------------------------------------------

# flagged id -> (partner id, parameter map)
_PARTNERS = {
    "C12:P63-g2": ("C21:T51-ii", c12_to_c21_params),
    "C21:P63-g3": ("C12:T31-i", c21_to_c12_params),
    "B02:P65-g2": ("B20:T53-ii", b02_to_b20_params),
    "B20:P65-g3": ("B02:T41-i", b20_to_b02_params),
}


def gauge_partner(sid: SolutionId, p: ParamSet) -> Tuple[SolutionId, ParamSet]:
    try:
        partner, fmap = _PARTNERS[str(sid)]
    except KeyError:
        raise KeyError(f"{sid} is not a gauge-product entry") from None
    return SolutionId.parse(partner), fmap(p)


def check_gauge_partner(sid: SolutionId, p: ParamSet, N: int = 16, printed: bool = True) -> bool:
    """Compare a gauge-product entry's series with its partner solution.

    The entry is ``E(x) x^mu sum c_n phi_n`` where ``E`` is the Euler factor
    of the correspondence; stripping ``E`` must leave exactly the partner
    family's catalog solution at the mapped parameters: same ``q^mu`` and the
    same coefficients. ``printed=False`` uses the corrected Pochhammer symbol
    for the two biconfluent entries.
    """
    entry = get_entry(sid)
    partner_id, mapped = gauge_partner(sid, p)
    g = p.generators()
    _, _, mine = raw_series(entry, g, sid.branch, N, printed=printed)
    pentry = get_entry(partner_id)
    _, _, theirs = raw_series(pentry, mapped.generators(), partner_id.branch, N)
    P_mine = prefactor_scale(entry.mu, g)
    P_theirs = prefactor_scale(pentry.mu, mapped.generators())
    return P_mine == P_theirs and mine == theirs
