"""Confluence degenerations between the q-families and continuum limits ``q -> 1``.

Degenerations send one generator ``u`` to zero while a product of generators
stays fixed. Substituting series in ``u`` for the source generators keeps
everything exact: the rewritten coefficients must be polynomials in ``u``
whose value at ``u = 0`` is the target operator (after a scalar).

Continuum limits come in two flavours here. Numerically, a catalog solution
at ``q`` near 1 is compared with the classical series it should approach.
Symbolically, every generator becomes a series in ``r`` (with ``q = 1 + eps``
and ``eps`` a monomial in ``r``), the shifts ``g(q^{+-1} x)`` are expanded by
Taylor's formula, and the lowest surviving order is a differential operator.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .equations import (
    Family,
    ParamSet,
    ThreeTermOperator,
    build_operator,
    check_constraints,
    operator_coefficients,
    prefactor_scale,
)
from .qalg import (
    BasisDescriptor,
    LaurentPoly,
    LSeries,
    as_rational,
    binomial_power,
    combine,
    format_rational,
    rising_factorial,
)
from .solutions import SolutionId, construct, get_entry, raw_series

__all__ = [
    "Arrow",
    "ARROWS",
    "DegenerationResult",
    "degeneration_check",
    "CONFLUENCE_PAIRS",
    "solution_confluence_check",
    "Exponents",
    "ConvergenceTable",
    "kummer_target",
    "kummer_limit_study",
    "kummer_limit_study_C21",
    "LimitODE",
    "kummer_ode",
    "kummer_ode_shifted",
    "hermite_ode",
    "ode_residual",
    "hermite_formal_series",
    "kummer_series_residual",
    "hermite_series_residual",
    "TaylorResult",
    "taylor_operator",
    "taylor_check_C12",
    "taylor_check_C21",
    "taylor_check_B02",
    "hermite_limit_B20",
    "hermite_limit_report",
    "HermiteRow",
    "hermite_report_csv",
]


# ---------------------------------------------------------------------------
# degenerations
# ---------------------------------------------------------------------------

def _u() -> LSeries:
    return LSeries.gen("u")


def _src_d2_c12(g: Mapping[str, Any], u: Any) -> Dict[str, Any]:
    # alpha2 + l2 fixed: L2 a2 = q A1 A2 / (L1 a1 Lam^2)
    K = g["q"] * g["A1"] * g["A2"] / (g["L1"] * g["a1"] * g["Lam"] ** 2)
    return {**g, "a2": u, "L2": K / u}


def _src_c12_b02(g: Mapping[str, Any], u: Any) -> Dict[str, Any]:
    return {**g, "L1": 1 / u}


def _src_d2_c21(g: Mapping[str, Any], u: Any) -> Dict[str, Any]:
    # h2 - alpha2 fixed: A2 / a2 = L1 L2 a1 Lam^2 / (q A1)
    K = g["L1"] * g["L2"] * g["a1"] * g["Lam"] ** 2 / (g["q"] * g["A1"])
    return {**g, "a2": 1 / u, "A2": K / u}


def _src_c21_b20(g: Mapping[str, Any], u: Any) -> Dict[str, Any]:
    return {**g, "A1": 1 / u}


@dataclass(frozen=True)
class Arrow:
    name: str
    source: Family
    target: Family
    u_name: str  # generator (or its inverse) sent to zero
    source_generators: Callable[[Mapping[str, Any], Any], Dict[str, Any]] = field(repr=False)
    # scalar multiplying the rewritten source operator; may depend on u
    normalization: Callable[[Mapping[str, Any], Any], Any] = field(repr=False)

    def source_params(self, target: ParamSet, u0: Any) -> ParamSet:
        g = self.source_generators(target.generators(), as_rational(u0))
        return ParamSet(family=self.source, **g)


ARROWS: Dict[str, Arrow] = {
    a.name: a
    for a in (
        Arrow("D2-C12", Family.D2, Family.C12, "a2", _src_d2_c12, lambda g, u: 1),
        Arrow("C12-B02", Family.C12, Family.B02, "1/L1", _src_c12_b02,
              lambda g, u: g["Lam"] ** 2 / (g["A1"] * g["A2"] * g["t1"] * g["t2"])),
        Arrow("D2-C21", Family.D2, Family.C21, "1/a2", _src_d2_c21, lambda g, u: u / g["a1"]),
        Arrow("C21-B20", Family.C21, Family.B20, "1/A1", _src_c21_b20,
              lambda g, u: 1 / (g["L1"] * g["L2"] * g["Lam"] ** 2 * g["t1"] * g["t2"])),
    )
}


def _series(v: Any, var: str = "u") -> LSeries:
    return v if isinstance(v, LSeries) else LSeries({0: v}, None, var)


def _map_op(op: ThreeTermOperator, f: Callable[[Any], Any], q: Any) -> ThreeTermOperator:
    return op.map_coeffs(lambda v: f(_series(v)), q=q)


@dataclass
class DegenerationResult:
    arrow: str
    rewrite_consistent: bool
    polynomial_in_u: bool
    limit_matches: bool
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.rewrite_consistent and self.polynomial_in_u and self.limit_matches

    def to_json(self) -> dict:
        return {
            "arrow": self.arrow,
            "pass": self.passed,
            "rewrite_consistent": self.rewrite_consistent,
            "polynomial_in_u": self.polynomial_in_u,
            "limit_matches": self.limit_matches,
            "detail": self.detail,
        }


def degeneration_check(arrow: Arrow, target: ParamSet, u0: Any = Fraction(1, 7),
                       normalization: Optional[Callable[[Mapping[str, Any], Any], Any]] = None
                       ) -> DegenerationResult:
    """Rewrite consistency at ``u0``, polynomiality in ``u``, and the ``u = 0`` limit."""
    if target.family is not arrow.target:
        raise ValueError(f"{arrow.name} needs a {arrow.target.value} parameter set")
    bad = check_constraints(target)
    if bad:
        raise ValueError("; ".join(bad))
    norm = normalization or arrow.normalization
    g = target.generators()
    u = _u()
    src = operator_coefficients(arrow.source, arrow.source_generators(g, u))
    k = _series(norm(g, u))
    rewritten = _map_op(src, lambda v: v * k, target.q)

    coeffs = [v for poly in (rewritten.A, rewritten.B, rewritten.C) for _, v in poly.items()]
    polynomial = all(_series(v).is_polynomial() for v in coeffs)

    u0 = as_rational(u0)
    direct = build_operator(arrow.source_params(target, u0))
    consistent = _map_op(src, lambda v: v(u0), target.q).same_as(direct)

    limit_ok = False
    detail = ""
    if polynomial:
        limit = _map_op(rewritten, lambda v: v.at_zero(), target.q)
        limit_ok = limit.same_as(build_operator(target))
        if not limit_ok:
            detail = "u=0 limit differs from the target operator"
    else:
        detail = "negative powers of u survive the normalization"
    return DegenerationResult(arrow.name, consistent, polynomial, limit_ok, detail)


# solution-level limits: (arrow, parent id, child id)
CONFLUENCE_PAIRS: List[Tuple[str, str, str]] = [
    ("D2-C12", "D2:P21-i", "C12:T31-i"),
    ("D2-C12", "D2:P21-ii:12", "C12:T31-ii"),
    ("D2-C12", "D2:P21-iii:12", "C12:T31-iii"),
    ("D2-C12", "D2:P21-iii:21", "C12:T31-iv"),
    ("D2-C12", "D2:T22-i:12", "C12:T32-i:12"),
    ("D2-C12", "D2:T22-i:21", "C12:T32-i:21"),
    ("D2-C12", "D2:T22-ii:12", "C12:T32-ii"),
    ("C12-B02", "C12:T31-i", "B02:T41-i"),
    ("C12-B02", "C12:T31-iii", "B02:T41-ii:12"),
    ("C12-B02", "C12:T31-iv", "B02:T41-ii:21"),
    ("C12-B02", "C12:T32-i:12", "B02:T41-iii:12"),
    ("C12-B02", "C12:T32-i:21", "B02:T41-iii:21"),
    ("D2-C21", "D2:P21-ii:12", "C21:T51-i:12"),
    ("D2-C21", "D2:P21-ii:21", "C21:T51-i:21"),
    ("D2-C21", "D2:P21-i", "C21:T51-ii"),
    ("D2-C21", "D2:P21-iii:12", "C21:T51-iii"),
    ("D2-C21", "D2:T22-i:12", "C21:T52-i"),
    ("D2-C21", "D2:T22-ii:12", "C21:T52-ii"),
    ("D2-C21", "D2:T22-ii:21", "C21:T52-iii"),
    ("C21-B20", "C21:T51-i:12", "B20:T53-i:12"),
    ("C21-B20", "C21:T51-i:21", "B20:T53-i:21"),
    ("C21-B20", "C21:T51-ii", "B20:T53-ii"),
    ("C21-B20", "C21:T52-ii", "B20:T53-iii:12"),
    ("C21-B20", "C21:T52-iii", "B20:T53-iii:21"),
]


def _evaluated_series(sid: SolutionId, g: Mapping[str, Any], N: int) -> Tuple[Any, LaurentPoly]:
    entry = get_entry(sid)
    c, d, coeffs = raw_series(entry, g, sid.branch, N)
    basis = BasisDescriptor(entry.kind, g["q"], c, d)
    return prefactor_scale(entry.mu, g), combine(basis, coeffs)


def solution_confluence_check(arrow: Arrow, parent: SolutionId, child: SolutionId,
                              target: ParamSet, N: int = 8) -> bool:
    """The parent's truncated series, rewritten in ``u`` and evaluated at ``u = 0``.

    Compared as explicit Laurent polynomials in ``x`` (so folded geometric
    factors and basis scales need not match individually), together with the
    prefactor ``q^mu``.
    """
    g = target.generators()
    src = arrow.source_generators(g, _u())
    P_par, S_par = _evaluated_series(parent, src, N)
    P_child, S_child = _evaluated_series(child, g, N)
    try:
        S0 = S_par.map_coeffs(lambda v: _series(v).at_zero())
        P0 = _series(P_par).at_zero()
    except ValueError:
        return False
    return P0 == P_child and S0 == S_child


# ---------------------------------------------------------------------------
# Kummer limit, numerically
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Exponents:
    """Exponent parameters of a continuum limit; ``q^h`` becomes ``s^(2h)``."""

    lam: Fraction = Fraction(0)
    alpha1: Fraction = Fraction(0)
    h1: Fraction = Fraction(0)
    h2: Fraction = Fraction(0)
    l1: Fraction = Fraction(0)
    l2: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("lam", "alpha1", "h1", "h2", "l1", "l2"):
            v = as_rational(getattr(self, name))
            if (2 * v).denominator != 1:
                raise ValueError(f"exponent {name}={v} is not a half-integer; q^{name} would be irrational")
            object.__setattr__(self, name, v)

    def power(self, s: Fraction, e: Fraction) -> Fraction:
        return s ** int(2 * e)


@dataclass
class ConvergenceTable:
    label: str
    eps: List[Fraction]
    max_abs_diff: List[Fraction]
    low: Fraction = Fraction(1, 20)
    high: Fraction = Fraction(1, 5)

    @property
    def ratios(self) -> List[Optional[Fraction]]:
        out: List[Optional[Fraction]] = []
        for a, b in zip(self.max_abs_diff, self.max_abs_diff[1:]):
            out.append(None if a == 0 else b / a)
        return out

    @property
    def passed(self) -> bool:
        if all(d == 0 for d in self.max_abs_diff):
            return True
        return all(r is not None and self.low <= r <= self.high for r in self.ratios)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        # exact values are in the JSON form; heights here run to thousands of digits
        w.writerow(["eps", "max_abs_diff", "ratio_to_previous"])
        ratios = [None] + self.ratios
        for e, d, r in zip(self.eps, self.max_abs_diff, ratios):
            w.writerow([format_rational(e), f"{float(d):.9e}", "" if r is None else f"{float(r):.6f}"])
        return buf.getvalue()


def kummer_target(a: Fraction, b: Fraction, T: Fraction, t1: Fraction, K: int) -> LaurentPoly:
    """``sum_{n<=K} (a)_n / ((b)_n n!) T^n (t1 - x)^n`` as a polynomial in ``x``."""
    base = LaurentPoly({0: t1, 1: -1})
    out = LaurentPoly()
    power = LaurentPoly.constant(Fraction(1))
    for n in range(K + 1):
        coeff = rising_factorial(a, n) * Fraction(T) ** n / (rising_factorial(b, n) * factorial(n))
        out = out + power * coeff
        power = power * base
    return out


def _limit_s(eps: Fraction) -> Fraction:
    # q = s^2 with s = 1 + eps/2, so q = 1 + eps + O(eps^2) stays a rational square
    return 1 + eps / 2


def _kummer_params(fam: Family, ex: Exponents, T: Fraction, t1: Fraction, eps: Fraction,
                   sign: int) -> ParamSet:
    s = _limit_s(eps)
    pw = lambda e: ex.power(s, e)
    t2 = sign / (T * eps)
    if fam is Family.C12:
        return ParamSet(family=fam, q=s * s, s=s, t1=t1, t2=t2, A1=pw(ex.h1), A2=pw(ex.h2),
                        L1=pw(ex.l1), a1=pw(ex.alpha1), Lam=pw(ex.lam))
    return ParamSet(family=fam, q=s * s, s=s, t1=t1, t2=t2, A1=pw(ex.h1), L1=pw(ex.l1),
                    L2=pw(ex.l2), a1=pw(ex.alpha1), Lam=pw(ex.lam))


def _kummer_table(fam: Family, sid: str, T: Any, ex: Exponents, eps_list: Sequence[Any], K: int,
                  t1: Any, sign: int) -> ConvergenceTable:
    T, t1 = as_rational(T), as_rational(t1)
    b = ex.h1 - ex.l1 + 1
    if b <= 0 and b.denominator == 1:
        raise ValueError("h1 - l1 + 1 must not be a non-positive integer")
    target = kummer_target(ex.lam + ex.alpha1, b, T, t1, K)
    eps_vals = [as_rational(e) for e in eps_list]
    diffs = []
    for eps in eps_vals:
        p = _kummer_params(fam, ex, T, t1, eps, sign)
        sol = construct(SolutionId.parse(sid), p, K)
        S = combine(sol.basis, sol.coeffs)
        diffs.append(max((abs(S[k] - target[k]) for k in range(K + 1)), default=Fraction(0)))
    return ConvergenceTable(f"{sid} vs 1F1", eps_vals, diffs)


def kummer_limit_study(T: Any, ex: Exponents, eps_list: Sequence[Any] = ("1/10", "1/100", "1/1000"),
                       K: int = 8, t1: Any = 1) -> ConvergenceTable:
    """C12 ascending solution at ``t2 = 1/(T eps)`` against ``1F1(lam+alpha1; h1-l1+1; T(t1-x))``."""
    return _kummer_table(Family.C12, "C12:T31-ii", T, ex, eps_list, K, t1, +1)


def kummer_limit_study_C21(T: Any, ex: Exponents, eps_list: Sequence[Any] = ("1/10", "1/100", "1/1000"),
                           K: int = 8, t1: Any = 1, sign: int = -1) -> ConvergenceTable:
    """The (2,1) route: ``t2 = -1/(T eps)``; ``sign=+1`` is the wrong arrow and should not converge."""
    return _kummer_table(Family.C21, "C21:T51-i:12", T, ex, eps_list, K, t1, sign)


# ---------------------------------------------------------------------------
# limit ODEs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LimitODE:
    """``p2 y'' + p1 y' + p0 y``."""

    p2: LaurentPoly
    p1: LaurentPoly
    p0: LaurentPoly
    label: str = ""

    def as_tuple(self) -> Tuple[LaurentPoly, LaurentPoly, LaurentPoly]:
        return (self.p0, self.p1, self.p2)


def kummer_ode(T: Any, ex: Exponents, t1: Any) -> LimitODE:
    """The second-order limit of the (1,2) equation, in ``g``."""
    T, t1 = as_rational(T), as_rational(t1)
    x = LaurentPoly({1: 1})
    lam, a1, h1, l1 = ex.lam, ex.alpha1, ex.h1, ex.l1
    p2 = x * x * (x - t1)
    p1 = x * (x * (x - t1) * T + x * (h1 - l1 + 1) - (x - t1) * (2 * lam))
    p0 = x * x * (a1 * T) + x * (lam * (t1 * T - h1 + l1 + lam)) - lam * (lam + 1) * t1
    return LimitODE(p2, p1, p0, "kummer-g")


def kummer_ode_shifted(T: Any, ex: Exponents) -> LimitODE:
    """Kummer's equation for ``f = x^lam g`` in ``w = x - t1``."""
    T = as_rational(T)
    w = LaurentPoly({1: 1})
    b = ex.h1 - ex.l1 + 1
    return LimitODE(w, w * T + b, LaurentPoly.constant((ex.lam + ex.alpha1) * T), "kummer-f")


def hermite_ode(B: Any, ex: Exponents) -> LimitODE:
    B = as_rational(B)
    x = LaurentPoly({1: 1})
    lam, a1 = ex.lam, ex.alpha1
    p2 = x * x
    p1 = x * (x * x * B**2 - 2 * lam)
    p0 = x * x * (a1 * B**2) + lam * (lam + 1)
    return LimitODE(p2, p1, p0, "hermite-g")


def ode_residual(ode: LimitODE, series: LaurentPoly, mu: Any = 0,
                 lo: Optional[int] = None, hi: Optional[int] = None) -> LaurentPoly:
    """``p2 g'' + p1 g' + p0 g`` for ``g = x^mu * series``, with ``x^mu`` divided out.

    ``lo``/``hi`` restrict the returned degrees.
    """
    mu = as_rational(mu)
    S = series
    d1 = S.derivative()
    d2 = d1.derivative()
    if mu:
        inv = LaurentPoly({-1: 1})
        g1 = d1 + S * inv * mu
        g2 = d2 + d1 * inv * (2 * mu) + S * inv * inv * (mu * (mu - 1))
    else:
        g1, g2 = d1, d2
    return (ode.p2 * g2 + ode.p1 * g1 + ode.p0 * S).truncate(lo, hi)


def hermite_formal_series(ex: Exponents, B: Any, K: int, corrected: bool = False) -> LaurentPoly:
    """``sum_{n<=K} (lam+alpha1)_{2n} / (n! B^{2n}) x^{-2n}`` (times ``x^-alpha1`` implicitly).

    ``corrected=True`` divides the n-th coefficient by ``2^n``, which is what
    the two-term recurrence of the limit equation actually demands.
    """
    B = as_rational(B)
    a = ex.lam + ex.alpha1
    coeffs = {}
    for n in range(K + 1):
        c = rising_factorial(a, 2 * n) / (factorial(n) * B ** (2 * n))
        if corrected:
            c /= 2**n
        coeffs[-2 * n] = c
    return LaurentPoly(coeffs)


def kummer_series_residual(T: Any, ex: Exponents, K: int = 12) -> LaurentPoly:
    """Residual of the degree-``K`` truncation of ``1F1(lam+alpha1; h1-l1+1; -T w)`` in Kummer's equation.

    Exact truncations leave only degrees ``K - 1`` and up.
    """
    T = as_rational(T)
    a, b = ex.lam + ex.alpha1, ex.h1 - ex.l1 + 1
    f = LaurentPoly({n: rising_factorial(a, n) / (rising_factorial(b, n) * factorial(n)) * (-T) ** n
                     for n in range(K + 1)})
    return ode_residual(kummer_ode_shifted(T, ex), f)


def hermite_series_residual(B: Any, ex: Exponents, K: int = 10, corrected: bool = False) -> LaurentPoly:
    """Residual of ``x^-alpha1`` times the formal series in the Hermite-side equation.

    The series is kept through ``x^(-2K-2)`` so that every degree down to
    ``x^(-2K)`` is free of truncation effects.
    """
    S = hermite_formal_series(ex, B, K + 1, corrected=corrected)
    return ode_residual(hermite_ode(B, ex), S, mu=-ex.alpha1)


# ---------------------------------------------------------------------------
# symbolic eps-expansion of an operator
# ---------------------------------------------------------------------------

@dataclass
class TaylorResult:
    label: str
    leading_order: int  # in powers of r
    vanishing_orders: List[int]  # orders below the leading one (all identically zero)
    ode: LimitODE  # coefficients at the leading order
    expected: LimitODE
    scalar: Optional[Fraction]
    matches: bool

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "leading_order_r": self.leading_order,
            "vanishing_orders_r": self.vanishing_orders,
            "scalar": None if self.scalar is None else format_rational(self.scalar),
            "matches": self.matches,
        }


def taylor_operator(op: ThreeTermOperator, jmax: int = 4) -> List[LaurentPoly]:
    """``D_j`` with ``op = sum_j D_j(x) d^j/dx^j``, from exact Taylor shifts.

    ``g(c x) = sum_j (c-1)^j x^j g^(j)(x) / j!`` for ``c = q`` and ``c = 1/q``.
    Coefficients of the returned polynomials are series in the expansion variable.
    """
    q = op.q
    up, down = q - 1, 1 / q - 1
    out = []
    for j in range(jmax + 1):
        poly = op.A * (down**j) + op.C * (up**j)
        if j == 0:
            poly = poly + op.B
        out.append(poly.shift(j) * Fraction(1, factorial(j)))
    return out


def _valuations(polys: Sequence[LaurentPoly]) -> Tuple[List[int], List[int]]:
    vals, precs = [], []
    for D in polys:
        for _, v in D.items():
            v = _series(v, "r")
            if v.valuation() is not None:
                vals.append(v.valuation())
            if v.prec is not None:
                precs.append(v.prec)
    return vals, precs


def _leading(Ds: List[LaurentPoly]) -> int:
    vals, precs = _valuations(Ds)
    if not vals:
        raise ValueError("operator vanishes to the working precision")
    k0 = min(vals)
    if precs and k0 >= min(precs):
        raise ValueError("leading order lies beyond the working precision")
    return k0


def _order(D: LaurentPoly, k: int) -> LaurentPoly:
    return LaurentPoly({d: _series(v, "r")[k] for d, v in D.items()})


def _compare(label: str, op: ThreeTermOperator, expected: LimitODE) -> TaylorResult:
    Ds = taylor_operator(op)
    k0 = _leading(Ds)
    # lowest order carried by the individual coefficients; everything between it
    # and k0 cancels in the combination
    floor = min(_valuations((op.A, op.B, op.C))[0])
    got = LimitODE(_order(Ds[2], k0), _order(Ds[1], k0), _order(Ds[0], k0), label)
    higher_zero = all(_order(D, k0) == 0 for D in Ds[3:])
    scalar = None
    for mine, ref in zip(got.as_tuple(), expected.as_tuple()):
        deg = ref.max_degree
        if deg is not None and mine[deg] != 0:
            scalar = ref[deg] / mine[deg]
            break
    matches = (scalar is not None and higher_zero
               and all(m * scalar == r for m, r in zip(got.as_tuple(), expected.as_tuple())))
    return TaylorResult(label, k0, list(range(floor, k0)), got, expected, scalar, matches)


def _taylor_generators(ex: Exponents, sigma: int, degree: int, prec: int, names: Sequence[str]
                       ) -> Dict[str, Any]:
    """``q = 1 + sigma r^degree`` and each generator ``q^e`` as a binomial series."""
    q = LSeries({0: 1, degree: sigma}, None, "r")
    g: Dict[str, Any] = {"q": q, "s": binomial_power(sigma, degree, Fraction(1, 2), prec, "r")}
    expo = {"A1": ex.h1, "A2": ex.h2, "L1": ex.l1, "L2": ex.l2, "a1": ex.alpha1, "Lam": ex.lam}
    for k in names:
        g[k] = binomial_power(sigma, degree, expo[k], prec, "r")
    return g


def taylor_check_C12(T: Any, ex: Exponents, t1: Any = 1, prec: int = 10) -> TaylorResult:
    """``q = 1 + eps, t2 = 1/(T eps)``: the (1,2) operator tends to the Kummer-type equation."""
    T, t1 = as_rational(T), as_rational(t1)
    g = _taylor_generators(ex, 1, 1, prec, ("A1", "A2", "L1", "a1", "Lam"))
    g.update(t1=t1, t2=LSeries({-1: 1 / T}, None, "r"))
    return _compare("C12 eps-expansion", operator_coefficients(Family.C12, g), kummer_ode(T, ex, t1))


def taylor_check_C21(T: Any, ex: Exponents, t1: Any = 1, prec: int = 10) -> TaylorResult:
    """``q = 1 + eps, t2 = -1/(T eps)`` applied to the (2,1) operator."""
    T, t1 = as_rational(T), as_rational(t1)
    g = _taylor_generators(ex, 1, 1, prec, ("A1", "L1", "L2", "a1", "Lam"))
    g.update(t1=t1, t2=LSeries({-1: -1 / T}, None, "r"))
    return _compare("C21 eps-expansion", operator_coefficients(Family.C21, g), kummer_ode(T, ex, t1))


def taylor_check_B02(B: Any, ex: Exponents, prec: int = 12) -> TaylorResult:
    """``q = 1 + r^2``, ``1/t1 = B r``, ``1/t2 = -B r``: the (0,2) operator tends to the Hermite-type equation."""
    B = as_rational(B)
    g = _taylor_generators(ex, 1, 2, prec, ("A1", "A2", "a1", "Lam"))
    g.update(t1=LSeries({-1: 1 / B}, None, "r"), t2=LSeries({-1: -1 / B}, None, "r"))
    return _compare("B02 eps-expansion", operator_coefficients(Family.B02, g), hermite_ode(B, ex))


def hermite_limit_B20(B: Any, ex: Exponents, prec: int = 12) -> TaylorResult:
    """``q = 1 - r^2`` (so ``(-eps)^(1/2) = r``), ``1/t1 = B r``, ``1/t2 = -B r`` on the (2,0) operator."""
    B = as_rational(B)
    g = _taylor_generators(ex, -1, 2, prec, ("L1", "L2", "a1", "Lam"))
    g.update(t1=LSeries({-1: 1 / B}, None, "r"), t2=LSeries({-1: -1 / B}, None, "r"))
    return _compare("B20 eps-expansion", operator_coefficients(Family.B20, g), hermite_ode(B, ex))


# ---------------------------------------------------------------------------
# Hermite-side series report (observational)
# ---------------------------------------------------------------------------

@dataclass
class HermiteRow:
    m: int
    n: int
    solution: Fraction
    target: Fraction
    target_corrected: Fraction

    def to_row(self) -> List[str]:
        return [str(self.m), str(self.n), f"{float(self.solution):.9e}", format_rational(self.target),
                format_rational(self.target_corrected), f"{float(self.solution - self.target):.6e}",
                f"{float(self.solution - self.target_corrected):.6e}"]


def hermite_limit_report(B: Any, ex: Exponents, ms: Sequence[int] = (10, 100), K: int = 4
                         ) -> List[HermiteRow]:
    """B02 descending solution at ``eps = 1/m^2`` against the formal Hermite-side series.

    Row ``n`` compares the coefficient of ``x^(-n)``: the target is the
    formal series coefficient for even ``n`` and zero for odd ``n``.
    Nothing is asserted.
    """
    B = as_rational(B)
    target = hermite_formal_series(ex, B, K)
    corrected = hermite_formal_series(ex, B, K, corrected=True)
    rows = []
    for m in ms:
        eps = Fraction(1, m * m)
        s = _limit_s(eps)
        pw = lambda e: ex.power(s, e)
        p = ParamSet(family=Family.B02, q=s * s, s=s, t1=Fraction(m) / B, t2=-Fraction(m) / B,
                     A1=pw(ex.h1), A2=pw(ex.h2), a1=pw(ex.alpha1), Lam=pw(ex.lam))
        sol = construct(SolutionId.parse("B02:T41-i"), p, 2 * K)
        for n in range(2 * K + 1):
            rows.append(HermiteRow(m, n, sol.coeffs[n], target[-n], corrected[-n]))
    return rows


def hermite_report_csv(rows: Sequence[HermiteRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "n", "solution", "target", "target_2^n", "diff_decimal", "diff_2^n_decimal"])
    for r in rows:
        w.writerow(r.to_row())
    return buf.getvalue()
