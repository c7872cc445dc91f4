"""Sparse Laurent polynomials with exact coefficients.

Coefficients are usually :class:`fractions.Fraction`, but any exact field-like
object works (in particular :class:`~qvariant.qalg.series.LSeries`, which is
how operators whose parameters depend on an auxiliary variable are built).
Polynomials in *different* variables treat each other as scalars.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, Iterator, Mapping, Optional, Tuple

__all__ = [
    "LaurentPoly",
    "X",
    "as_rational",
    "format_rational",
    "poly_add",
    "poly_mul",
    "poly_scale_arg",
]


def as_rational(value: Any) -> Fraction:
    """Coerce ``value`` to a Fraction.

    Strings use the ``"p/q"`` form (optional leading minus). Floats are refused
    because they would smuggle rounding into exact computations.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            n = int(num)
            d = int(den) if sep else 1
        except ValueError:
            raise ValueError(f"malformed rational {value!r}") from None
        if d == 0:
            raise ValueError(f"malformed rational {value!r}: zero denominator")
        return Fraction(n, d)
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a string 'p/q' or a Fraction")
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _is_zero(c: Any) -> bool:
    return c == 0


class LaurentPoly:
    """Finite map ``degree -> coefficient`` with no stored zeros.

    Instances are treated as immutable.
    """

    __slots__ = ("_c", "var")

    def __init__(self, coeffs: Optional[Mapping[int, Any]] = None, var: str = "x"):
        c: Dict[int, Any] = {}
        if coeffs:
            for k, v in coeffs.items():
                if not _is_zero(v):
                    c[int(k)] = v
        self._c = c
        self.var = var

    @classmethod
    def _raw(cls, c: Dict[int, Any], var: str) -> "LaurentPoly":
        p = object.__new__(cls)
        p._c = c
        p.var = var
        return p

    @classmethod
    def constant(cls, value: Any, var: str = "x") -> "LaurentPoly":
        return cls({0: value}, var)

    @classmethod
    def monomial(cls, degree: int, coeff: Any = 1, var: str = "x") -> "LaurentPoly":
        return cls({degree: coeff}, var)

    @classmethod
    def from_list(cls, coeffs: Iterable[Any], start: int = 0, var: str = "x") -> "LaurentPoly":
        return cls({start + i: c for i, c in enumerate(coeffs)}, var)

    # -- inspection -------------------------------------------------------
    def __getitem__(self, degree: int) -> Any:
        return self._c.get(degree, 0)

    def items(self) -> Iterator[Tuple[int, Any]]:
        return iter(sorted(self._c.items()))

    def degrees(self) -> list:
        return sorted(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    @property
    def max_degree(self) -> Optional[int]:
        return max(self._c) if self._c else None

    @property
    def min_degree(self) -> Optional[int]:
        return min(self._c) if self._c else None

    def as_dict(self) -> Dict[int, Any]:
        return dict(self._c)

    # -- ring structure ---------------------------------------------------
    def _same_var(self, other: Any) -> bool:
        return isinstance(other, LaurentPoly) and other.var == self.var

    def __add__(self, other: Any) -> "LaurentPoly":
        if not self._same_var(other):
            if _is_zero(other):
                return self
            other = LaurentPoly._raw({0: other}, self.var)
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, 0) + v
            if _is_zero(s):
                c.pop(k, None)
            else:
                c[k] = s
        return LaurentPoly._raw(c, self.var)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({k: -v for k, v in self._c.items()}, self.var)

    def __sub__(self, other: Any) -> "LaurentPoly":
        return self + (-other)

    def __rsub__(self, other: Any) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other: Any) -> "LaurentPoly":
        if self._same_var(other):
            c: Dict[int, Any] = {}
            for i, a in self._c.items():
                for j, b in other._c.items():
                    c[i + j] = c.get(i + j, 0) + a * b
            return LaurentPoly(c, self.var)
        if _is_zero(other):
            return LaurentPoly._raw({}, self.var)
        return LaurentPoly({k: v * other for k, v in self._c.items()}, self.var)

    def __rmul__(self, other: Any) -> "LaurentPoly":
        # scalar * poly; coefficient rings here are commutative
        return self.__mul__(other)

    def __truediv__(self, other: Any) -> "LaurentPoly":
        if self._same_var(other):
            if len(other._c) != 1:
                raise ZeroDivisionError("only division by a monomial is exact; use divide_linear")
            (k, v), = other._c.items()
            return LaurentPoly({d - k: c / v for d, c in self._c.items()}, self.var)
        return LaurentPoly({k: v / other for k, v in self._c.items()}, self.var)

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._c) != 1:
                raise ValueError("negative powers only for monomials")
            (k, v), = self._c.items()
            return LaurentPoly({k * n: v**n}, self.var)
        out = LaurentPoly._raw({0: 1}, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, LaurentPoly):
            return self.var == other.var and self._c == other._c
        if _is_zero(other):
            return not self._c
        return self._c == {0: other}

    def __hash__(self) -> int:
        return hash((self.var, frozenset(self._c.items())))

    # -- transformations --------------------------------------------------
    def scale_arg(self, r: Any) -> "LaurentPoly":
        """Return ``p(r*x)``."""
        return LaurentPoly({k: v * r**k for k, v in self._c.items()}, self.var)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``x**k``."""
        return LaurentPoly._raw({d + k: v for d, v in self._c.items()}, self.var)

    def truncate(self, lo: Optional[int] = None, hi: Optional[int] = None) -> "LaurentPoly":
        return LaurentPoly._raw(
            {
                k: v
                for k, v in self._c.items()
                if (lo is None or k >= lo) and (hi is None or k <= hi)
            },
            self.var,
        )

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly({k - 1: k * v for k, v in self._c.items() if k != 0}, self.var)

    def map_coeffs(self, f: Callable[[Any], Any]) -> "LaurentPoly":
        return LaurentPoly({k: f(v) for k, v in self._c.items()}, self.var)

    def __call__(self, x: Any) -> Any:
        total: Any = 0
        for k, v in self._c.items():
            total = total + v * x**k
        return total

    def divide_linear(self, alpha: Any) -> "LaurentPoly":
        """Exact quotient by ``(1 - alpha*x)``; raises if there is a remainder."""
        if not self._c:
            return self
        if _is_zero(alpha):
            return self
        lo, hi = min(self._c), max(self._c)
        # p = (1 - a x) * r, solved from the top degree down
        r: Dict[int, Any] = {}
        rem = dict(self._c)
        for d in range(hi, lo, -1):
            c = rem.get(d, 0)
            if _is_zero(c):
                continue
            coef = c / (-alpha)
            r[d - 1] = coef
            rem[d - 1] = rem.get(d - 1, 0) - coef
        leftover = rem.get(lo, 0)
        if not _is_zero(leftover):
            raise ValueError(f"(1 - ({alpha})*{self.var}) does not divide the polynomial")
        return LaurentPoly(r, self.var)

    # -- display ----------------------------------------------------------
    def __repr__(self) -> str:
        if not self._c:
            return "LaurentPoly(0)"
        terms = []
        for k, v in sorted(self._c.items(), reverse=True):
            cv = format_rational(v) if isinstance(v, (Fraction, int)) else f"({v!r})"
            if k == 0:
                terms.append(cv)
            elif k == 1:
                terms.append(f"{cv}*{self.var}")
            else:
                terms.append(f"{cv}*{self.var}^{k}")
        return "LaurentPoly(" + " + ".join(terms) + ")"


X = LaurentPoly.monomial(1, Fraction(1))


def poly_add(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    return p + r


def poly_mul(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    return p * r


def poly_scale_arg(p: LaurentPoly, r: Any) -> LaurentPoly:
    """Map ``p(x)`` to ``p(r x)``: the degree-k coefficient is multiplied by ``r**k``."""
    return p.scale_arg(r)
