"""Catalog of explicit formal series solutions.

Each entry yields ``g(x) = x^mu * sum_n c_n phi_n(x)`` where ``phi_n`` is a
graded basis element (see :mod:`qvariant.qalg.basis`) and ``P = q^mu`` is a
monomial in the generators. Geometric factors ``k^n`` and the triangular
factors ``(-1)^n q^{n(n-1)/2}``, ``q^{-n^2/2}`` of the closed forms are folded
into ``c_n`` so that only the basis kinds of :class:`BasisKind` are needed.

The coefficient formulas are written against a plain mapping of generator
values so that they can be evaluated on exact rationals or on series in an
auxiliary variable (which is how the confluence limits are checked).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

from .equations import ConstraintError, Family, ParamSet, check_constraints, prefactor_scale
from .qalg import BasisDescriptor, BasisKind, format_rational, q_pochhammer

__all__ = [
    "SolutionId",
    "CatalogEntry",
    "SeriesSolution",
    "DegenerateParameters",
    "CATALOG",
    "list_catalog",
    "get_entry",
    "construct",
    "raw_series",
    "terminating_degree",
]


class DegenerateParameters(ZeroDivisionError):
    """A Pochhammer denominator of a closed form vanished."""


@dataclass(frozen=True)
class SolutionId:
    family: Family
    label: str
    branch: Optional[Tuple[int, int]] = None

    def __str__(self) -> str:
        text = f"{self.family.value}:{self.label}"
        if self.branch:
            text += f":{self.branch[0]}{self.branch[1]}"
        return text

    @classmethod
    def parse(cls, text: str) -> "SolutionId":
        parts = text.strip().split(":")
        if len(parts) not in (2, 3):
            raise ValueError(f"malformed solution id {text!r}")
        fam = Family(parts[0])
        branch = None
        if len(parts) == 3:
            if parts[2] not in ("12", "21"):
                raise ValueError(f"branch must be 12 or 21, got {parts[2]!r}")
            branch = (int(parts[2][0]), int(parts[2][1]))
        return cls(fam, parts[1], branch)


class _Ctx:
    """Generator access with the branch ``(i, i')`` resolved."""

    def __init__(self, g: Mapping[str, Any], branch: Optional[Tuple[int, int]]):
        self.g = g
        self.q = g["q"]
        self.s = g["s"]
        self.z = g["Lam"] * g["a1"]  # q^(lambda + alpha1)
        i, j = branch or (1, 2)
        self.i, self.j = i, j

    def __getitem__(self, k: str) -> Any:
        return self.g[k]

    # branch-indexed generators: ti, tj, Ai, Aj, Li, Lj
    def t(self, which: str) -> Any:
        return self.g[f"t{self.i if which == 'i' else self.j}"]

    def A(self, which: str) -> Any:
        return self.g[f"A{self.i if which == 'i' else self.j}"]

    def L(self, which: str) -> Any:
        return self.g[f"L{self.i if which == 'i' else self.j}"]

    def poch(self, a: Any, n: int) -> Any:
        return q_pochhammer(a, self.q, n)

    def den(self, a: Any, n: int, name: str) -> Any:
        v = q_pochhammer(a, self.q, n)
        if v == 0:
            raise DegenerateParameters(f"denominator factor {name} vanishes at n={n}")
        return v

    def qq(self, n: int) -> Any:
        return q_pochhammer(self.q, self.q, n)


# Each builder returns (center c, scale d, [c_0..c_N]).
Builder = Callable[[_Ctx, int], Tuple[Any, Any, List[Any]]]


# ---------------------------------------------------------------------------
# degree-two variant (D2)
# ---------------------------------------------------------------------------

def _d2_monomial_desc(k: _Ctx, N: int):
    q, s, z = k.q, k.s, k.z
    A1, A2, L1, L2, a1, a2, t1, t2 = (k[n] for n in ("A1", "A2", "L1", "L2", "a1", "a2", "t1", "t2"))
    out = []
    for n in range(N + 1):
        inner = 0
        for j in range(n + 1):
            inner = inner + (k.poch(z * L2 / A2, j) * k.poch(z * L1 / A1, n - j)
                             / (k.qq(j) * k.qq(n - j)) * (L1 * t1) ** j * (L2 * t2) ** (n - j))
        out.append(s**n * k.poch(z, n) / k.den(q * a1 / a2, n, "(q^(α1-α2+1);q)_n") * inner)
    return 1, 1, out


def _d2_phi32_asc(k: _Ctx, N: int):
    q, s, z = k.q, k.s, k.z
    Ai, Aj, Li, ti, tj = k.A("i"), k.A("j"), k.L("i"), k.t("i"), k.t("j")
    a2, Lam = k["a2"], k["Lam"]
    out = [q**n * k.poch(z, n) * k.poch(Lam * a2, n)
           / (k.den(q * Ai / Li, n, "(q^(h_i-l_i+1);q)_n")
              * k.den(q * Aj * tj / (Li * ti), n, "(q^(h_i'-l_i+1)t_i'/t_i;q)_n") * k.qq(n))
           for n in range(N + 1)]
    return Li * ti / s, 1, out


def _d2_poch_desc(k: _Ctx, N: int):
    q, s, z = k.q, k.s, k.z
    Ai, Aj, Li, Lj, ti, tj = k.A("i"), k.A("j"), k.L("i"), k.L("j"), k.t("i"), k.t("j")
    ratio = Ai * ti / (Lj * tj)
    out = []
    for n in range(N + 1):
        inner = 0
        for j in range(n + 1):
            inner = inner + (k.poch(z * Lj / Aj, j)
                             / (k.den(q * Ai / Li, j, "(q^(h_i-l_i+1);q)_k") * k.qq(j) * k.qq(n - j))
                             * q ** (j * (j + 1) // 2) * (-ratio) ** j)
        out.append(q**n * k.poch(z, n) / k.den(q * ratio, n, "(q^(h_i-l_i'+1)t_i/t_i';q)_n") * inner)
    return Ai * s * ti, 1, out


def _d2_mixed_asc(k: _Ctx, N: int):
    q, s, z = k.q, k.s, k.z
    Ai, Aj, Li, Lj, ti, tj = k.A("i"), k.A("j"), k.L("i"), k.L("j"), k.t("i"), k.t("j")
    a2, Lam = k["a2"], k["Lam"]
    out = [k.poch(z, n) * k.poch(Lam * a2, n)
           / (k.den(q * Ai / Li, n, "(q^(h_i-l_i+1);q)_n")
              * k.den(q * Ai * ti / (Lj * tj), n, "(q^(h_i-l_i'+1)t_i/t_i';q)_n") * k.qq(n))
           for n in range(N + 1)]
    return Ai * s * ti, Aj * tj / s, out


def _d2_mixed_desc(k: _Ctx, N: int):
    q, s, z = k.q, k.s, k.z
    Ai, Aj, Li, Lj, ti, tj = k.A("i"), k.A("j"), k.L("i"), k.L("j"), k.t("i"), k.t("j")
    w = -Ai * s * ti / (z * Lj * tj)
    out = []
    for n in range(N + 1):
        inner = 0
        for j in range(n + 1):
            inner = inner + (q ** (-n * j) * s ** (j * j) * k.poch(z * Lj / Aj, j)
                             / (k.den(q * Ai / Li, j, "(q^(h_i-l_i+1);q)_k") * k.qq(n - j) * k.qq(j))
                             * w**j)
        out.append(k.poch(z, n) / k.den(q * Aj * tj / (Li * ti), n, "(q^(1+h_i'-l_i)t_i'/t_i;q)_n")
                   * inner)
    return Li * ti / s, Aj * s * tj / z, out


# ---------------------------------------------------------------------------
# confluent type (1,2) (C12)
# ---------------------------------------------------------------------------

def _c12_monomial_desc(k: _Ctx, N: int):
    q, s, z = k.q, k.s, k.z
    A1, A2, L1, t1, t2 = (k[n] for n in ("A1", "A2", "L1", "t1", "t2"))
    w = -A2 * t2 / (z * L1 * t1)
    out = []
    for n in range(N + 1):
        inner = 0
        for j in range(n + 1):
            inner = inner + (k.poch(z * L1 / A1, j) / (k.qq(n - j) * k.qq(j))
                             * q ** (-(j * (2 * n - j - 1)) // 2) * w**j)
        out.append((A1 * s * t1 / z) ** n * k.poch(z, n) * inner)
    return 1, 1, out


def _c12_phi32_asc(k: _Ctx, N: int):
    q, s, z = k.q, k.s, k.z
    A1, A2, L1, t1, t2 = (k[n] for n in ("A1", "A2", "L1", "t1", "t2"))
    out = [q**n * k.poch(z, n)
           / (k.den(q * A1 / L1, n, "(q^(h1-l1+1);q)_n")
              * k.den(q * A2 * t2 / (L1 * t1), n, "(q^(h2-l1+1)t2/t1;q)_n") * k.qq(n))
           for n in range(N + 1)]
    return L1 * t1 / s, 1, out


def _c12_poch_desc_1(k: _Ctx, N: int):
    q, s, z = k.q, k.s, k.z
    A1, A2, L1, t1, t2 = (k[n] for n in ("A1", "A2", "L1", "t1", "t2"))
    w = z * A1 * t1 / (A2 * t2)
    out = []
    for n in range(N + 1):
        inner = 0
        for j in range(n + 1):
            inner = inner + (q ** (j * j) * w**j
                             / (k.den(q * A1 / L1, j, "(q^(h1-l1+1);q)_k") * k.qq(j) * k.qq(n - j)))
        out.append(q**n * k.poch(z, n) * inner)
    return A1 * s * t1, 1, out


def _c12_poch_desc_2(k: _Ctx, N: int):
    q, s, z = k.q, k.s, k.z
    A1, A2, L1, t1, t2 = (k[n] for n in ("A1", "A2", "L1", "t1", "t2"))
    ratio = A2 * t2 / (L1 * t1)
    out = []
    for n in range(N + 1):
        inner = 0
        for j in range(n + 1):
            inner = inner + (k.poch(z * L1 / A1, j) / (k.qq(j) * k.qq(n - j))
                             * q ** (j * (j + 1) // 2) * (-ratio) ** j)
        out.append(q**n * k.poch(z, n) / k.den(q * ratio, n, "(q^(h2-l1+1)t2/t1;q)_n") * inner)
    return A2 * s * t2, 1, out


def _c12_mixed_asc(k: _Ctx, N: int):
    q, s, z = k.q, k.s, k.z
    Ai, Aj, ti, tj = k.A("i"), k.A("j"), k.t("i"), k.t("j")
    L1, t1 = k["L1"], k["t1"]
    out = [k.poch(z, n) / (k.den(q * Ai * ti / (L1 * t1), n, "(q^(h_i-l1+1)t_i/t1;q)_n") * k.qq(n))
           for n in range(N + 1)]
    return Ai * s * ti, Aj * tj / s, out


def _c12_mixed_desc(k: _Ctx, N: int):
    q, s, z = k.q, k.s, k.z
    A1, A2, L1, t1, t2 = (k[n] for n in ("A1", "A2", "L1", "t1", "t2"))
    w = A1 * t1 / (A2 * t2)
    out = []
    for n in range(N + 1):
        inner = 0
        for j in range(n + 1):
            inner = inner + (q ** (-n * j + j * j) * w**j
                             / (k.den(q * A1 / L1, j, "(q^(h1-l1+1);q)_k") * k.qq(n - j) * k.qq(j)))
        out.append(k.poch(z, n) / k.den(q * A2 * t2 / (L1 * t1), n, "(q^(1+h2-l1)t2/t1;q)_n")
                   * inner)
    return L1 * t1 / s, A2 * s * t2 / z, out


# ---------------------------------------------------------------------------
# biconfluent type (0,2) (B02)
# ---------------------------------------------------------------------------

def _b02_monomial_desc(k: _Ctx, N: int):
    q, s, z = k.q, k.s, k.z
    A1, A2, t1, t2 = (k[n] for n in ("A1", "A2", "t1", "t2"))
    out = []
    for n in range(N + 1):
        inner = 0
        for j in range(n + 1):
            inner = inner + (q ** (-j * (n - j)) * (A1 * t1) ** (n - j) * (A2 * t2) ** j
                             / (k.qq(n - j) * k.qq(j)))
        out.append((s / z) ** n * k.poch(z, n) * inner)
    return 1, 1, out


def _b02_poch_desc(k: _Ctx, N: int):
    q, s, z = k.q, k.s, k.z
    Ai, Aj, ti, tj = k.A("i"), k.A("j"), k.t("i"), k.t("j")
    w = z * Ai * ti / (Aj * tj)
    out = []
    for n in range(N + 1):
        inner = 0
        for j in range(n + 1):
            inner = inner + q ** (j * j) * w**j / (k.qq(j) * k.qq(n - j))
        out.append(q**n * k.poch(z, n) * inner)
    return Ai * s * ti, 1, out


def _b02_mixed_asc(k: _Ctx, N: int):
    s, z = k.s, k.z
    Ai, Aj, ti, tj = k.A("i"), k.A("j"), k.t("i"), k.t("j")
    out = [k.poch(z, n) / k.qq(n) for n in range(N + 1)]
    return Ai * s * ti, Aj * tj / s, out


# ---------------------------------------------------------------------------
# confluent type (2,1) (C21)
# ---------------------------------------------------------------------------

def _c21_poch_asc(k: _Ctx, N: int):
    q, s, z = k.q, k.s, k.z
    Li, Lj, ti, tj = k.L("i"), k.L("j"), k.t("i"), k.t("j")
    A1, t1 = k["A1"], k["t1"]
    w = q * A1 * t1 / (z * Lj * tj)
    out = [w**n * k.poch(z, n)
           / (k.den(q * A1 * t1 / (Li * ti), n, "(q^(h1-l_i+1)t1/t_i;q)_n") * k.qq(n))
           for n in range(N + 1)]
    return Li * ti / s, 1, out


def _c21_monomial_desc(k: _Ctx, N: int):
    s, z = k.s, k.z
    A1, L1, L2, t1, t2 = (k[n] for n in ("A1", "L1", "L2", "t1", "t2"))
    out = []
    for n in range(N + 1):
        inner = 0
        for j in range(n + 1):
            inner = inner + (k.poch(z * L1 / A1, n - j) / (k.qq(j) * k.qq(n - j))
                             * (L1 * t1) ** j * (L2 * t2) ** (n - j))
        out.append(s**n * k.poch(z, n) * inner)
    return 1, 1, out


def _c21_poch_desc(k: _Ctx, N: int):
    q, s, z = k.q, k.s, k.z
    A1, L1, L2, t1, t2 = (k[n] for n in ("A1", "L1", "L2", "t1", "t2"))
    ratio = A1 * t1 / (L2 * t2)
    out = []
    for n in range(N + 1):
        inner = 0
        for j in range(n + 1):
            inner = inner + (q ** (j * (j + 1) // 2) * (-ratio) ** j
                             / (k.den(q * A1 / L1, j, "(q^(h1-l1+1);q)_k") * k.qq(j) * k.qq(n - j)))
        out.append(q**n * k.poch(z, n) / k.den(q * ratio, n, "(q^(h1-l2+1)t1/t2;q)_n") * inner)
    return A1 * s * t1, 1, out


def _c21_mixed_asc(k: _Ctx, N: int):
    q, s, z = k.q, k.s, k.z
    A1, L1, L2, t1, t2 = (k[n] for n in ("A1", "L1", "L2", "t1", "t2"))
    out = [(-1) ** n * q ** (n * (n - 1) // 2) * k.poch(z, n)
           / (k.den(q * A1 / L1, n, "(q^(h1-l1+1);q)_n")
              * k.den(q * A1 * t1 / (L2 * t2), n, "(q^(h1-l2+1)t1/t2;q)_n") * k.qq(n))
           for n in range(N + 1)]
    # x^n scale: q^(-lambda-alpha1-l1-l2+h1+3/2) x / t2 = x / d
    return A1 * s * t1, z * L1 * L2 * t2 / (A1 * q * s), out


def _c21_mixed_desc_1(k: _Ctx, N: int):
    q, s, z = k.q, k.s, k.z
    A1, L1, L2, t1, t2 = (k[n] for n in ("A1", "L1", "L2", "t1", "t2"))
    w = -A1 * s * t1 / (z * L2 * t2)
    out = []
    for n in range(N + 1):
        inner = 0
        for j in range(n + 1):
            inner = inner + (q ** (-n * j) * s ** (j * j) * w**j
                             / (k.den(q * A1 / L1, j, "(q^(h1-l1+1);q)_k") * k.qq(n - j) * k.qq(j)))
        out.append((-1) ** n * s ** (-n * n) * k.poch(z, n) * inner)
    return L1 * t1 / s, L1 * t1 / z, out


def _c21_mixed_desc_2(k: _Ctx, N: int):
    q, s, z = k.q, k.s, k.z
    A1, L1, L2, t1, t2 = (k[n] for n in ("A1", "L1", "L2", "t1", "t2"))
    w = L2 * t2 / (z * L1 * t1)
    out = []
    for n in range(N + 1):
        inner = 0
        for j in range(n + 1):
            inner = inner + q ** (-n * j) * k.poch(z * L1 / A1, j) * w**j / (k.qq(n - j) * k.qq(j))
        out.append(k.poch(z, n) / k.den(q * A1 * t1 / (L2 * t2), n, "(q^(1+h1-l2)t1/t2;q)_n")
                   * inner)
    return L2 * t2 / s, A1 * s * t1 / z, out


# ---------------------------------------------------------------------------
# biconfluent type (2,0) (B20)
# ---------------------------------------------------------------------------

def _b20_poch_asc(k: _Ctx, N: int):
    q, s, z = k.q, k.s, k.z
    Li, Lj, ti, tj = k.L("i"), k.L("j"), k.t("i"), k.t("j")
    w = -Li * ti / (z * Lj * tj)
    out = [w**n * q ** (-(n * (n - 1)) // 2) * k.poch(z, n) / k.qq(n) for n in range(N + 1)]
    return Li * ti / s, 1, out


def _b20_monomial_desc(k: _Ctx, N: int):
    s, z = k.s, k.z
    L1, L2, t1, t2 = (k[n] for n in ("L1", "L2", "t1", "t2"))
    out = []
    for n in range(N + 1):
        inner = 0
        for j in range(n + 1):
            inner = inner + (L1 * t1) ** j * (L2 * t2) ** (n - j) / (k.qq(j) * k.qq(n - j))
        out.append(s**n * k.poch(z, n) * inner)
    return 1, 1, out


def _b20_mixed_desc(k: _Ctx, N: int):
    q, s, z = k.q, k.s, k.z
    Li, Lj, ti, tj = k.L("i"), k.L("j"), k.t("i"), k.t("j")
    w = Li * ti / (z * Lj * tj)
    out = []
    for n in range(N + 1):
        inner = 0
        for j in range(n + 1):
            inner = inner + q ** (-n * j) * w**j / (k.qq(n - j) * k.qq(j))
        out.append((-1) ** n * s ** (-n * n) * k.poch(z, n) * inner)
    return Li * ti / s, Li * ti / z, out


# ---------------------------------------------------------------------------
# gauge-product entries: only the series part is built here
# ---------------------------------------------------------------------------

def _c12_gauge_g2(k: _Ctx, N: int, printed: bool = True):
    q, s, z = k.q, k.s, k.z
    A1, A2, L1, t1, t2 = (k[n] for n in ("A1", "A2", "L1", "t1", "t2"))
    out = []
    for n in range(N + 1):
        inner = 0
        for j in range(n + 1):
            inner = inner + (k.poch(q / z, n - j) / (k.qq(j) * k.qq(n - j))
                             * (L1 * t1) ** j * (A2 * t2) ** (n - j))
        out.append(s**n * k.poch(q * A1 / (z * L1), n) * inner)
    return 1, 1, out


def _c21_gauge_g3(k: _Ctx, N: int, printed: bool = True):
    q, s, z = k.q, k.s, k.z
    A1, L1, L2, t1, t2 = (k[n] for n in ("A1", "L1", "L2", "t1", "t2"))
    w = -z * L2 * t2 / (q * A1 * t1)
    out = []
    for n in range(N + 1):
        inner = 0
        for j in range(n + 1):
            inner = inner + (k.poch(q / z, j) / (k.qq(n - j) * k.qq(j))
                             * q ** (-(j * (2 * n - j - 1)) // 2) * w**j)
        out.append((z * L1 * t1 / s) ** n * k.poch(q * A1 / (z * L1), n) * inner)
    return 1, 1, out


def _b02_gauge_g2(k: _Ctx, N: int, printed: bool = True):
    q, s, z = k.q, k.s, k.z
    A1, A2, t1, t2 = (k[n] for n in ("A1", "A2", "t1", "t2"))
    # as printed the outer symbol is (q^(-lambda-alpha1-1);q)_n; the partner
    # series of the (2,0) equation has (q^(1-lambda-alpha1);q)_n
    outer = 1 / (q * z) if printed else q / z
    out = []
    for n in range(N + 1):
        inner = 0
        for j in range(n + 1):
            inner = inner + (A1 * t1) ** j * (A2 * t2) ** (n - j) / (k.qq(j) * k.qq(n - j))
        out.append(s**n * k.poch(outer, n) * inner)
    return 1, 1, out


def _b20_gauge_g3(k: _Ctx, N: int, printed: bool = True):
    q, s, z = k.q, k.s, k.z
    L1, L2, t1, t2 = (k[n] for n in ("L1", "L2", "t1", "t2"))
    # as printed the outer symbol is (q^(lambda+alpha1);q)_n; the partner
    # series of the (0,2) equation has (q^(1-lambda-alpha1);q)_n
    outer = z if printed else q / z
    out = []
    for n in range(N + 1):
        inner = 0
        for j in range(n + 1):
            inner = inner + (q ** (-j * (n - j)) * (L1 * t1) ** (n - j) * (L2 * t2) ** j
                             / (k.qq(n - j) * k.qq(j)))
        out.append((z / s) ** n * k.poch(outer, n) * inner)
    return 1, 1, out


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    family: Family
    label: str
    mu: str
    kind: BasisKind
    description: str
    builder: Callable = field(repr=False, compare=False)
    branched: bool = False
    verifiable: bool = True
    # exponent exactly as displayed in the source formula, when it differs from ``mu``
    printed_mu: Optional[str] = None
    # gauge-product entries: (euler-factor side, partner solution label)
    gauge_note: Optional[str] = None

    def ids(self) -> List[SolutionId]:
        if self.branched:
            return [SolutionId(self.family, self.label, (1, 2)),
                    SolutionId(self.family, self.label, (2, 1))]
        return [SolutionId(self.family, self.label)]


_MD, _PA, _PD, _XA, _XD = (BasisKind.MONOMIAL_DESC, BasisKind.POCH_ASC, BasisKind.POCH_DESC,
                           BasisKind.MIXED_ASC, BasisKind.MIXED_DESC)
D2, C12, B02, C21, B20 = Family.D2, Family.C12, Family.B02, Family.C21, Family.B20

CATALOG: List[CatalogEntry] = [
    CatalogEntry(D2, "P21-i", "-alpha1", _MD, "x^-α1 double sum in (q^1/2/x)^n", _d2_monomial_desc),
    CatalogEntry(D2, "P21-ii", "lambda", _PA, "x^λ 3phi2 in (x/(q^(l_i-1/2)t_i);q)_n",
                 _d2_phi32_asc, branched=True),
    CatalogEntry(D2, "P21-iii", "-alpha1", _PD, "x^-α1 series in (q^(h_i+1/2)t_i/x;q)_n",
                 _d2_poch_desc, branched=True),
    CatalogEntry(D2, "T22-i", "lambda", _XA,
                 "x^λ 3phi2 in (q^(h_i+1/2)t_i/x;q)_n (x/(q^(h_i'-1/2)t_i'))^n",
                 _d2_mixed_asc, branched=True),
    CatalogEntry(D2, "T22-ii", "-alpha1", _XD,
                 "x^-α1 series in (x/(q^(l_i-1/2)t_i);q)_n (q^(-λ-α1+h_i'+1/2)t_i'/x)^n",
                 _d2_mixed_desc, branched=True, printed_mu="+alpha1"),
    CatalogEntry(C12, "T31-i", "-alpha1", _MD, "x^-α1 double sum in x^-n", _c12_monomial_desc),
    CatalogEntry(C12, "T31-ii", "lambda", _PA, "x^λ 3phi2(.,0,.) in (x/(q^(l1-1/2)t1);q)_n",
                 _c12_phi32_asc),
    CatalogEntry(C12, "T31-iii", "-alpha1", _PD, "x^-α1 series in (q^(h1+1/2)t1/x;q)_n",
                 _c12_poch_desc_1),
    CatalogEntry(C12, "T31-iv", "-alpha1", _PD, "x^-α1 series in (q^(h2+1/2)t2/x;q)_n",
                 _c12_poch_desc_2),
    CatalogEntry(C12, "T32-i", "lambda", _XA,
                 "x^λ 2phi1 in (q^(h_i+1/2)t_i/x;q)_n (x/(q^(h_i'-1/2)t_i'))^n",
                 _c12_mixed_asc, branched=True),
    CatalogEntry(C12, "T32-ii", "-alpha1", _XD,
                 "x^-α1 series in (x/(q^(l1-1/2)t1);q)_n (q^(-λ-α1+h2+1/2)t2/x)^n",
                 _c12_mixed_desc),
    CatalogEntry(B02, "T41-i", "-alpha1", _MD, "x^-α1 double sum in x^-n", _b02_monomial_desc),
    CatalogEntry(B02, "T41-ii", "-alpha1", _PD, "x^-α1 series in (q^(h_i+1/2)t_i/x;q)_n",
                 _b02_poch_desc, branched=True),
    CatalogEntry(B02, "T41-iii", "lambda", _XA,
                 "x^λ 2phi1(.,.;0) in (q^(h_i+1/2)t_i/x;q)_n (x/(q^(h_i'-1/2)t_i'))^n",
                 _b02_mixed_asc, branched=True),
    CatalogEntry(C21, "T51-i", "lambda", _PA, "x^λ 2phi1 in (x/(q^(l_i-1/2)t_i);q)_n",
                 _c21_poch_asc, branched=True),
    CatalogEntry(C21, "T51-ii", "-alpha1", _MD, "x^-α1 double sum in (q^1/2/x)^n",
                 _c21_monomial_desc),
    CatalogEntry(C21, "T51-iii", "-alpha1", _PD, "x^-α1 series in (q^(h1+1/2)t1/x;q)_n",
                 _c21_poch_desc),
    CatalogEntry(C21, "T52-i", "lambda", _XA, "x^λ 2phi2 in (q^(h1+1/2)t1/x;q)_n x^n",
                 _c21_mixed_asc),
    CatalogEntry(C21, "T52-ii", "-alpha1", _XD,
                 "x^-α1 series in (x/(q^(l1-1/2)t1);q)_n (q^(-λ-α1+l1)t1/x)^n", _c21_mixed_desc_1),
    CatalogEntry(C21, "T52-iii", "-alpha1", _XD,
                 "x^-α1 series in (x/(q^(l2-1/2)t2);q)_n (q^(-λ-α1+h1+1/2)t1/x)^n",
                 _c21_mixed_desc_2),
    CatalogEntry(B20, "T53-i", "lambda", _PA, "x^λ 2phi0 in (x/(q^(l_i-1/2)t_i);q)_n",
                 _b20_poch_asc, branched=True),
    CatalogEntry(B20, "T53-ii", "-alpha1", _MD, "x^-α1 double sum in (q^1/2/x)^n",
                 _b20_monomial_desc),
    CatalogEntry(B20, "T53-iii", "-alpha1", _XD,
                 "x^-α1 series in (x/(q^(l_i-1/2)t_i);q)_n (q^(-λ-α1+l_i)t_i/x)^n",
                 _b20_mixed_desc, branched=True),
    # series multiplied by Euler products; coefficients of the full product are
    # infinite sums, so these are checked through their partner series instead
    CatalogEntry(C12, "P63-g2", "2lambda+alpha1-h1+l1-1", _MD,
                 "1/(q^(-h2+1/2)x/t2;q)_inf times x^(2λ+α1-h1+l1-1) double sum",
                 _c12_gauge_g2, verifiable=False, gauge_note="DETACH q^(-h2+1/2)/t2; partner C21:T51-ii"),
    CatalogEntry(C21, "P63-g3", "2lambda+alpha1-h1+l1-1", _MD,
                 "(q^(-l2+1/2)x/t2;q)_inf times x^(2λ+α1-h1+l1-1) double sum",
                 _c21_gauge_g3, verifiable=False, gauge_note="ATTACH q^(-l2-1/2)/t2; partner C12:T31-i"),
    CatalogEntry(B02, "P65-g2", "2lambda+alpha1-1", _MD,
                 "1/((q^(-h1+1/2)x/t1;q)_inf (q^(-h2+1/2)x/t2;q)_inf) times x^(2λ+α1-1) double sum",
                 _b02_gauge_g2, verifiable=False, gauge_note="DETACH twice; partner B20:T53-ii"),
    CatalogEntry(B20, "P65-g3", "2lambda+alpha1-1", _MD,
                 "(q^(-l1+1/2)x/t1;q)_inf (q^(-l2+1/2)x/t2;q)_inf times x^(2λ+α1-1) double sum",
                 _b20_gauge_g3, verifiable=False, gauge_note="ATTACH twice; partner B02:T41-i"),
]

# aliases of gauge partners that are already ordinary entries
ALIASES: Dict[str, str] = {
    "C12:P63-g1": "C12:T31-i",
    "C21:P63-g4": "C21:T51-ii",
    "B02:P65-g1": "B02:T41-i",
    "B20:P65-g4": "B20:T53-ii",
}

_BY_KEY = {(e.family, e.label): e for e in CATALOG}


def get_entry(sid: SolutionId) -> CatalogEntry:
    try:
        entry = _BY_KEY[(sid.family, sid.label)]
    except KeyError:
        raise KeyError(f"no catalog entry {sid}") from None
    if entry.branched != (sid.branch is not None):
        raise KeyError(f"{sid}: branch {'required' if entry.branched else 'not allowed'}")
    return entry


def resolve_id(text: str) -> SolutionId:
    return SolutionId.parse(ALIASES.get(text, text))


def list_catalog(include_unverifiable: bool = True) -> List[dict]:
    rows = []
    for e in CATALOG:
        if not e.verifiable and not include_unverifiable:
            continue
        for sid in e.ids():
            row = {
                "id": sid,
                "description": e.description,
                "mu": e.mu,
                "basis": e.kind,
                "verifiable": e.verifiable,
            }
            if e.printed_mu is not None:
                row["printed_mu"] = e.printed_mu
            rows.append(row)
    return rows


@dataclass
class SeriesSolution:
    id: SolutionId
    mu: str
    P: Any
    basis: BasisDescriptor
    coeffs: List[Any]
    terminated_at: Optional[int] = None

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def with_coeffs(self, coeffs: List[Any]) -> "SeriesSolution":
        return SeriesSolution(self.id, self.mu, self.P, self.basis, list(coeffs),
                              terminating_degree_of(coeffs))

    def to_json(self) -> dict:
        return {
            "id": str(self.id),
            "mu": self.mu,
            "P": format_rational(self.P),
            "basis": self.basis.to_json(),
            "coeffs": [format_rational(c) for c in self.coeffs],
            "terminated_at": self.terminated_at,
        }


def raw_series(entry: CatalogEntry, g: Mapping[str, Any], branch: Optional[Tuple[int, int]],
               N: int, **opts) -> Tuple[Any, Any, List[Any]]:
    """Evaluate an entry's closed form on arbitrary generator values, unchecked."""
    return entry.builder(_Ctx(g, branch), N, **opts)


def terminating_degree_of(coeffs: List[Any]) -> Optional[int]:
    nz = [n for n, c in enumerate(coeffs) if c != 0]
    if not nz:
        return None
    last = nz[-1]
    return last if last < len(coeffs) - 1 else None


def construct(sid: SolutionId, params: ParamSet, N: int, *, mu: Optional[str] = None,
              **opts) -> SeriesSolution:
    """Build ``c_0..c_N`` of a catalog entry at an admissible parameter set.

    ``mu`` overrides the entry's prefactor exponent id (used to reproduce a
    printed exponent that fails verification).
    """
    if sid.family is not params.family:
        raise ConstraintError(f"{sid} belongs to {sid.family.value}, params are {params.family.value}")
    bad = check_constraints(params)
    if bad:
        raise ConstraintError("; ".join(bad))
    entry = get_entry(sid)
    g = params.generators()
    c, d, coeffs = raw_series(entry, g, sid.branch, N, **opts)
    c0 = coeffs[0]
    if c0 != 1:
        coeffs = [cn / c0 for cn in coeffs]
    mu = mu or entry.mu
    basis = BasisDescriptor(entry.kind, g["q"], Fraction(c), Fraction(d))
    return SeriesSolution(sid, mu, prefactor_scale(mu, g), basis, coeffs,
                          terminating_degree_of(coeffs))


def terminating_degree(sid: SolutionId, params: ParamSet, N: int) -> Optional[int]:
    return construct(sid, params, N).terminated_at
