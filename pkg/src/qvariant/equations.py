"""The five three-term q-difference equations, in multiplicative generators.

Every q-power in the equations is a Laurent monomial in the generators

    q, s = q^(1/2), t1, t2, A_i = q^(h_i), L_i = q^(l_i), a_i = q^(alpha_i), Lam = q^lambda

so all coefficients stay rational. The operator ``(A, B, C)`` acts as
``A(x) g(x/q) + B(x) g(x) + C(x) g(q x)``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional

from .qalg import LaurentPoly, as_rational, format_rational

__all__ = [
    "Family",
    "ParamSet",
    "ThreeTermOperator",
    "GENERATORS",
    "FAMILY_GENERATORS",
    "ConstraintError",
    "check_constraints",
    "build_operator",
    "operator_coefficients",
    "apply_operator",
    "family_exponent_data",
    "prefactor_scale",
]


class Family(str, enum.Enum):
    D2 = "D2"  # degree-two variant
    C12 = "C12"  # confluent, type (1,2)
    B02 = "B02"  # biconfluent, type (0,2)
    C21 = "C21"  # confluent, type (2,1)
    B20 = "B20"  # biconfluent, type (2,0)


GENERATORS = ("q", "s", "t1", "t2", "A1", "A2", "L1", "L2", "a1", "a2", "Lam")

FAMILY_GENERATORS: Dict[Family, tuple] = {
    Family.D2: GENERATORS,
    Family.C12: ("q", "s", "t1", "t2", "A1", "A2", "L1", "a1", "Lam"),
    Family.B02: ("q", "s", "t1", "t2", "A1", "A2", "a1", "Lam"),
    Family.C21: ("q", "s", "t1", "t2", "A1", "L1", "L2", "a1", "Lam"),
    Family.B20: ("q", "s", "t1", "t2", "L1", "L2", "a1", "Lam"),
}

# (deg A, deg C) per family
OPERATOR_DEGREES = {
    Family.D2: (2, 2),
    Family.C12: (2, 1),
    Family.B02: (2, 0),
    Family.C21: (1, 2),
    Family.B20: (0, 2),
}


class ConstraintError(ValueError):
    pass


@dataclass(frozen=True)
class ParamSet:
    family: Family
    q: Fraction
    s: Fraction
    t1: Fraction
    t2: Fraction
    A1: Optional[Fraction] = None
    A2: Optional[Fraction] = None
    L1: Optional[Fraction] = None
    L2: Optional[Fraction] = None
    a1: Optional[Fraction] = None
    a2: Optional[Fraction] = None
    Lam: Optional[Fraction] = None

    def generators(self) -> Dict[str, Fraction]:
        return {k: getattr(self, k) for k in GENERATORS if getattr(self, k) is not None}

    def with_(self, **changes: Any) -> "ParamSet":
        return replace(self, **{k: (None if v is None else as_rational(v)) if k != "family" else v
                                for k, v in changes.items()})

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ParamSet":
        data = dict(data)
        try:
            fam = Family(data.pop("family"))
        except KeyError:
            raise ConstraintError("parameter set lacks a 'family' key") from None
        unknown = set(data) - set(GENERATORS)
        if unknown:
            raise ConstraintError(f"unknown generator keys: {sorted(unknown)}")
        vals = {k: as_rational(v) for k, v in data.items()}
        for k in ("q", "s", "t1", "t2"):
            if k not in vals:
                raise ConstraintError(f"missing generator {k!r}")
        return cls(family=fam, **vals)

    def to_dict(self) -> Dict[str, str]:
        out: Dict[str, str] = {"family": self.family.value}
        for k, v in self.generators().items():
            out[k] = format_rational(v)
        return out

    @classmethod
    def from_json(cls, text: str) -> "ParamSet":
        return cls.from_dict(json.loads(text))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class ThreeTermOperator:
    A: LaurentPoly  # g(x/q)
    B: LaurentPoly  # g(x)
    C: LaurentPoly  # g(q x)
    q: Any

    def scaled(self, k: Any) -> "ThreeTermOperator":
        return ThreeTermOperator(self.A * k, self.B * k, self.C * k, self.q)

    def degrees(self):
        return (self.A.max_degree, self.B.max_degree, self.C.max_degree)

    def map_coeffs(self, f, q: Any = None) -> "ThreeTermOperator":
        return ThreeTermOperator(self.A.map_coeffs(f), self.B.map_coeffs(f), self.C.map_coeffs(f),
                                 self.q if q is None else q)

    def same_as(self, other: "ThreeTermOperator") -> bool:
        return self.A == other.A and self.B == other.B and self.C == other.C


def check_constraints(p: ParamSet) -> List[str]:
    """Return the list of violated constraints (empty when admissible)."""
    bad: List[str] = []
    fam = p.family
    allowed = FAMILY_GENERATORS[fam]
    for k in GENERATORS:
        v = getattr(p, k)
        if k in allowed and v is None:
            bad.append(f"missing generator {k}")
        elif k not in allowed and v is not None:
            bad.append(f"unused generator {k} present for {fam.value}")
    if p.s * p.s != p.q:
        bad.append("s²≠q")
    if p.q in (0, 1):
        bad.append("q must differ from 0 and 1")
    for k in allowed:
        v = getattr(p, k)
        if v is not None and v == 0:
            bad.append(f"generator {k} is zero")
    if fam is Family.D2 and not bad:
        if p.Lam**2 * p.L1 * p.L2 * p.a1 * p.a2 != p.q * p.A1 * p.A2:
            bad.append("Lam²·L1·L2·a1·a2 ≠ q·A1·A2")
    return bad


def _lin(root: Any) -> LaurentPoly:
    """``x - root``."""
    return LaurentPoly({1: 1}) - root


def operator_coefficients(fam: Family, g: Mapping[str, Any]) -> ThreeTermOperator:
    """Substitute generator values into the displayed equation of ``fam``.

    ``g`` may hold any exact scalars (Fractions, or series in an auxiliary
    variable); no admissibility checks are made here.
    """
    q, s, t1, t2 = g["q"], g["s"], g["t1"], g["t2"]
    x = LaurentPoly({1: 1})
    if fam is Family.D2:
        A1, A2, L1, L2, a1, a2, Lam = (g[k] for k in ("A1", "A2", "L1", "L2", "a1", "a2", "Lam"))
        p = A1 * A2 * s / Lam
        E = -p * ((1 / A2 + 1 / L2) * t1 + (1 / A1 + 1 / L1) * t2)
        A = _lin(A1 * s * t1) * _lin(A2 * s * t2)
        C = _lin(L1 * t1 / s) * _lin(L2 * t2 / s) * (a1 * a2)
        B = -(x * x * (a1 + a2) + x * E + p * (s + 1 / s) * t1 * t2)
        return ThreeTermOperator(A, B, C, q)
    if fam is Family.C12:
        A1, A2, L1, a1, Lam = (g[k] for k in ("A1", "A2", "L1", "a1", "Lam"))
        C = (L1 * t1 / s - x) * (A1 * A2 * s * t2 / (L1 * Lam * Lam))
        A = _lin(A1 * s * t1) * _lin(A2 * s * t2)
        B = -(x * x * a1 - x * (A1 * A2 * s / Lam) * (t1 / A2 + t2 / A1 + t2 / L1)
              + (A1 * A2 / Lam) * (q + 1) * t1 * t2)
        return ThreeTermOperator(A, B, C, q)
    if fam is Family.B02:
        A1, A2, a1, Lam = (g[k] for k in ("A1", "A2", "a1", "Lam"))
        C = LaurentPoly.constant(Fraction(1))
        A = (1 - x / (A1 * s * t1)) * (1 - x / (A2 * s * t2)) * (q * Lam * Lam)
        B = -(x * x * (a1 * Lam * Lam / (A1 * A2 * t1 * t2))
              - x * (Lam * s) * (1 / (A1 * t1) + 1 / (A2 * t2))
              + Lam * (q + 1))
        return ThreeTermOperator(A, B, C, q)
    if fam is Family.C21:
        A1, L1, L2, a1, Lam = (g[k] for k in ("A1", "L1", "L2", "a1", "Lam"))
        C = _lin(L1 * t1 / s) * _lin(L2 * t2 / s)
        A = -_lin(A1 * s * t1) * (L1 * L2 * Lam * Lam * t2 / (A1 * s))
        B = -(x * x / a1 - x * (L1 * L2 * Lam / s) * (t1 / L2 + (1 / A1 + 1 / L1) * t2)
              + L1 * L2 * Lam * (1 + 1 / q) * t1 * t2)
        return ThreeTermOperator(A, B, C, q)
    if fam is Family.B20:
        L1, L2, a1, Lam = (g[k] for k in ("L1", "L2", "a1", "Lam"))
        A = LaurentPoly.constant(Fraction(1))
        C = (1 - x * s / (L1 * t1)) * (1 - x * s / (L2 * t2)) / (q * Lam * Lam)
        B = -(x * x / (a1 * L1 * L2 * Lam * Lam * t1 * t2)
              - x / (Lam * s) * (1 / (L1 * t1) + 1 / (L2 * t2))
              + (1 + 1 / q) / Lam)
        return ThreeTermOperator(A, B, C, q)
    raise ValueError(f"unknown family {fam!r}")


def build_operator(p: ParamSet) -> ThreeTermOperator:
    bad = check_constraints(p)
    if bad:
        raise ConstraintError("; ".join(bad))
    return operator_coefficients(p.family, p.generators())


def apply_operator(op: ThreeTermOperator, P: Any, S: LaurentPoly) -> LaurentPoly:
    """Residual of ``g = x^mu S(x)`` with the factor ``x^mu`` removed; ``P = q^mu``.

    Uses ``g(x/q) = P^{-1} x^mu S(x/q)`` and ``g(qx) = P x^mu S(qx)``.
    """
    if P == 0:
        raise ValueError("prefactor scale P must be nonzero")
    q = op.q
    return op.A * S.scale_arg(1 / q) * (1 / P) + op.B * S + op.C * S.scale_arg(q) * P


# prefactor id -> (exponent as text, generator monomial giving q^mu)
_EXPONENTS = {
    "lambda": ("λ", lambda g: g["Lam"]),
    "-alpha1": ("-α1", lambda g: 1 / g["a1"]),
    "+alpha1": ("+α1", lambda g: g["a1"]),
    "2lambda+alpha1-h1+l1-1": ("2λ+α1-h1+l1-1",
                               lambda g: g["Lam"] ** 2 * g["a1"] * g["L1"] / (g["A1"] * g["q"])),
    "2lambda+alpha1-1": ("2λ+α1-1", lambda g: g["Lam"] ** 2 * g["a1"] / g["q"]),
}


def family_exponent_data() -> Dict[str, str]:
    """Prefactor ids and the exponent each one stands for."""
    return {k: v[0] for k, v in _EXPONENTS.items()}


def prefactor_scale(mu: str, g: Mapping[str, Any]) -> Any:
    """``P = q^mu`` as a monomial in the generators."""
    try:
        return _EXPONENTS[mu][1](g)
    except KeyError:
        raise KeyError(f"unknown prefactor id {mu!r}") from None
