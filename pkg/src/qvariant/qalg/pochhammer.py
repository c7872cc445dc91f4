"""q-Pochhammer symbols, rising factorials and Euler product expansions."""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .poly import LaurentPoly

__all__ = [
    "q_pochhammer",
    "rising_factorial",
    "euler_expand",
    "inv_euler_expand",
    "q_binomial_weight",
]


def q_pochhammer(a: Any, q: Any, n: int) -> Any:
    """``(a; q)_n = prod_{i<n} (1 - a q^i)``.

    Works for any exact scalar type (Fraction, LSeries, ...).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    out: Any = Fraction(1)
    term = a
    for _ in range(n):
        out = out * (1 - term)
        term = term * q
    return out


def rising_factorial(a: Any, n: int) -> Any:
    if n < 0:
        raise ValueError("n must be non-negative")
    out: Any = Fraction(1)
    for i in range(n):
        out = out * (a + i)
    return out


def q_binomial_weight(q: Any, n: int) -> Any:
    """``1 / (q; q)_n``."""
    return 1 / q_pochhammer(q, q, n)


def euler_expand(alpha: Any, q: Any, N: int) -> LaurentPoly:
    """Degrees ``0..N`` of ``(alpha x; q)_inf``.

    The degree-k coefficient is ``(-1)^k q^{k(k-1)/2} alpha^k / (q;q)_k``;
    exact for any ``q`` that is not a root of unity, although the product
    only converges for ``|q| < 1``.
    """
    coeffs = {}
    qq = Fraction(1)  # (q;q)_k
    for k in range(N + 1):
        if k:
            qq = qq * (1 - q**k)
        coeffs[k] = (-1) ** k * q ** (k * (k - 1) // 2) * alpha**k / qq
    return LaurentPoly(coeffs)


def inv_euler_expand(alpha: Any, q: Any, N: int) -> LaurentPoly:
    """Degrees ``0..N`` of ``1 / (alpha x; q)_inf``; coefficient ``alpha^k / (q;q)_k``."""
    coeffs = {}
    qq = Fraction(1)
    for k in range(N + 1):
        if k:
            qq = qq * (1 - q**k)
        coeffs[k] = alpha**k / qq
    return LaurentPoly(coeffs)
