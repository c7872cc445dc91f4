"""Truncated Laurent series in an auxiliary variable.

Used as a scalar type for the equation builders when a parameter depends on a
second variable: the vanishing generator ``u`` of a degeneration arrow, or the
continuum-limit variable ``r`` with ``q = 1 + sigma*r**2``.

A series is *exact* (``prec is None``) when it is known to be a finite Laurent
polynomial; otherwise coefficients are known for degrees ``< prec``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, Mapping, Optional

__all__ = ["LSeries", "binomial_power"]

DEFAULT_REL_PREC = 24


def _min_prec(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class LSeries:
    __slots__ = ("_c", "prec", "var")

    def __init__(self, coeffs: Optional[Mapping[int, Any]] = None, prec: Optional[int] = None,
                 var: str = "u"):
        c: Dict[int, Fraction] = {}
        for k, v in (coeffs or {}).items():
            if v != 0 and (prec is None or k < prec):
                c[int(k)] = Fraction(v)
        self._c = c
        self.prec = prec
        self.var = var

    @classmethod
    def gen(cls, var: str = "u") -> "LSeries":
        return cls({1: 1}, None, var)

    @classmethod
    def monomial(cls, degree: int, coeff: Any = 1, var: str = "u") -> "LSeries":
        return cls({degree: coeff}, None, var)

    # -- inspection -------------------------------------------------------
    def __getitem__(self, k: int) -> Fraction:
        if self.prec is not None and k >= self.prec:
            raise IndexError(f"coefficient of {self.var}^{k} is beyond precision {self.prec}")
        return self._c.get(k, Fraction(0))

    @property
    def is_exact(self) -> bool:
        return self.prec is None

    def valuation(self) -> Optional[int]:
        return min(self._c) if self._c else None

    def degrees(self) -> list:
        return sorted(self._c)

    def is_polynomial(self) -> bool:
        """Exact and free of negative powers."""
        return self.prec is None and all(k >= 0 for k in self._c)

    def at_zero(self) -> Fraction:
        """Value at ``var = 0``; defined only when no negative powers survive."""
        neg = [k for k in self._c if k < 0]
        if neg:
            raise ValueError(f"series has a pole of order {-min(neg)} at {self.var}=0")
        return self[0]

    def __call__(self, value: Any) -> Fraction:
        if self.prec is not None:
            raise ValueError("cannot evaluate a truncated series at a point")
        return sum((v * Fraction(value) ** k for k, v in self._c.items()), Fraction(0))

    def truncate(self, prec: int) -> "LSeries":
        return LSeries(self._c, _min_prec(self.prec, prec), self.var)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other: Any) -> "LSeries":
        if isinstance(other, LSeries):
            if other.var != self.var:
                raise ValueError(f"mixing series in {self.var} and {other.var}")
            return other
        return LSeries({0: Fraction(other)}, None, self.var)

    def __add__(self, other: Any) -> "LSeries":
        if not isinstance(other, (LSeries, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        c = dict(self._c)
        for k, v in o._c.items():
            c[k] = c.get(k, 0) + v
        return LSeries(c, _min_prec(self.prec, o.prec), self.var)

    __radd__ = __add__

    def __neg__(self) -> "LSeries":
        return LSeries({k: -v for k, v in self._c.items()}, self.prec, self.var)

    def __sub__(self, other: Any) -> "LSeries":
        if not isinstance(other, (LSeries, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "LSeries":
        return (-self) + other

    def __mul__(self, other: Any) -> "LSeries":
        if not isinstance(other, (LSeries, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        if (not self._c and self.prec is None) or (not o._c and o.prec is None):
            return LSeries({}, None, self.var)
        # a truncated zero is known to vanish below its precision
        va = self.valuation() if self._c else self.prec
        vb = o.valuation() if o._c else o.prec
        prec = _min_prec(None if self.prec is None else self.prec + vb,
                         None if o.prec is None else o.prec + va)
        c: Dict[int, Fraction] = {}
        for i, a in self._c.items():
            for j, b in o._c.items():
                k = i + j
                if prec is not None and k >= prec:
                    continue
                c[k] = c.get(k, 0) + a * b
        return LSeries(c, prec, self.var)

    __rmul__ = __mul__

    def inverse(self, rel_prec: int = DEFAULT_REL_PREC) -> "LSeries":
        v = self.valuation()
        if v is None:
            raise ZeroDivisionError("inverse of a zero series")
        lead = self._c[v]
        if self.prec is None and len(self._c) == 1:
            return LSeries({-v: 1 / lead}, None, self.var)
        rp = rel_prec if self.prec is None else self.prec - v
        # self = lead * var^v * (1 + t),  t has positive valuation
        t = {k - v: c / lead for k, c in self._c.items() if k != v}
        inv: Dict[int, Fraction] = {0: Fraction(1)}
        for n in range(1, rp):
            acc = Fraction(0)
            for k, c in t.items():
                if k <= n:
                    acc -= c * inv.get(n - k, 0)
            if acc:
                inv[n] = acc
        return LSeries({k - v: c / lead for k, c in inv.items()}, rp - v, self.var)

    def __truediv__(self, other: Any) -> "LSeries":
        if isinstance(other, LSeries):
            return self * other.inverse()
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return LSeries({k: v / other for k, v in self._c.items()}, self.prec, self.var)

    def __rtruediv__(self, other: Any) -> "LSeries":
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "LSeries":
        if not isinstance(n, int):
            raise TypeError("only integer powers; use binomial_power for rational exponents")
        if n < 0:
            return self.inverse() ** (-n)
        out = LSeries({0: 1}, None, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, LSeries):
            diff = self - other
        elif isinstance(other, (int, Fraction)):
            diff = self - other
        else:
            return NotImplemented
        return not diff._c

    def __hash__(self) -> int:
        return hash((self.var, frozenset(self._c.items()), self.prec))

    def __repr__(self) -> str:
        terms = [f"{v}*{self.var}^{k}" for k, v in sorted(self._c.items())]
        body = " + ".join(terms) if terms else "0"
        tail = "" if self.prec is None else f" + O({self.var}^{self.prec})"
        return f"LSeries({body}{tail})"


def binomial_power(coeff: Any, degree: int, exponent: Any, prec: int,
                   var: str = "r") -> LSeries:
    """``(1 + coeff * var**degree) ** exponent`` for rational ``exponent``.

    Exact when ``exponent`` is a non-negative integer; otherwise truncated at
    absolute precision ``prec`` via the generalized binomial series.
    """
    exponent = Fraction(exponent)
    coeff = Fraction(coeff)
    if degree <= 0:
        raise ValueError("degree must be positive")
    if exponent.denominator == 1 and exponent >= 0:
        e = int(exponent)
        terms = {}
        b = Fraction(1)
        for j in range(e + 1):
            terms[j * degree] = b * coeff**j
            b = b * (e - j) / (j + 1)
        return LSeries(terms, None, var)
    terms = {}
    b = Fraction(1)
    j = 0
    while j * degree < prec:
        terms[j * degree] = b * coeff**j
        b = b * (exponent - j) / (j + 1)
        j += 1
    return LSeries(terms, prec, var)
