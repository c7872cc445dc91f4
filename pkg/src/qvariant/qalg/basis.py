"""Graded bases used to carry formal series solutions.

Every basis element ``phi_n`` is a Laurent polynomial supported on degrees
between ``0`` and ``direction * n`` with a nonzero coefficient at
``direction * n``. That triangularity is what makes :func:`basis_project`
a simple greedy elimination.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, List, Tuple

from .poly import LaurentPoly

__all__ = ["BasisKind", "BasisDescriptor", "basis_expand", "basis_project"]


class BasisKind(str, enum.Enum):
    MONOMIAL_DESC = "MONOMIAL_DESC"  # (d/x)^n
    POCH_ASC = "POCH_ASC"  # (x/c; q)_n
    POCH_DESC = "POCH_DESC"  # (c/x; q)_n
    MIXED_ASC = "MIXED_ASC"  # (c/x; q)_n (x/d)^n
    MIXED_DESC = "MIXED_DESC"  # (x/c; q)_n (d/x)^n
    # power-series carrier for gauge-transformed solutions
    MONOMIAL_ASC = "MONOMIAL_ASC"  # (x/d)^n


_ASCENDING = {BasisKind.POCH_ASC, BasisKind.MIXED_ASC, BasisKind.MONOMIAL_ASC}


@dataclass(frozen=True)
class BasisDescriptor:
    kind: BasisKind
    q: Fraction
    c: Fraction = Fraction(1)
    d: Fraction = Fraction(1)
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.c == 0 or self.d == 0:
            raise ValueError(f"{self.kind.value}: basis center and scale must be nonzero")

    @property
    def direction(self) -> int:
        return 1 if self.kind in _ASCENDING else -1

    def element(self, n: int) -> LaurentPoly:
        if n < 0:
            raise ValueError("basis index must be non-negative")
        cache = self._cache
        if n in cache:
            return cache[n]
        start = max((k for k in cache if k < n), default=None)
        if start is None:
            cur, start = LaurentPoly.constant(Fraction(1)), 0
            cache[0] = cur
        else:
            cur = cache[start]
        for k in range(start, n):
            cur = cur * self._step(k)
            cache[k + 1] = cur
        return cache[n]

    def _step(self, k: int) -> LaurentPoly:
        """Factor taking ``phi_k`` to ``phi_{k+1}``."""
        q, c, d = self.q, self.c, self.d
        qk = q**k
        kind = self.kind
        if kind is BasisKind.MONOMIAL_DESC:
            return LaurentPoly({-1: d})
        if kind is BasisKind.MONOMIAL_ASC:
            return LaurentPoly({1: 1 / d})
        if kind is BasisKind.POCH_ASC:
            return LaurentPoly({0: 1, 1: -qk / c})
        if kind is BasisKind.POCH_DESC:
            return LaurentPoly({0: 1, -1: -c * qk})
        if kind is BasisKind.MIXED_ASC:
            # (1 - c q^k / x) * (x / d)
            return LaurentPoly({1: 1 / d, 0: -c * qk / d})
        if kind is BasisKind.MIXED_DESC:
            # (1 - x q^k / c) * (d / x)
            return LaurentPoly({-1: d, 0: -d * qk / c})
        raise ValueError(kind)

    def extreme_coeff(self, n: int) -> Fraction:
        return self.element(n)[self.direction * n]

    def to_json(self) -> dict:
        from .poly import format_rational

        return {
            "kind": self.kind.value,
            "q": format_rational(self.q),
            "c": format_rational(self.c),
            "d": format_rational(self.d),
        }


def basis_expand(b: BasisDescriptor, n: int) -> LaurentPoly:
    return b.element(n)


def combine(b: BasisDescriptor, coeffs) -> LaurentPoly:
    """``sum_n coeffs[n] * phi_n`` as an explicit Laurent polynomial."""
    total = LaurentPoly()
    for n, cn in enumerate(coeffs):
        if cn:
            total = total + b.element(n) * cn
    return total


def basis_project(p: LaurentPoly, b: BasisDescriptor, M: int) -> Tuple[List[Any], LaurentPoly]:
    """Express ``p`` as ``sum_{m<=M} comp[m] phi_m + overflow``.

    Greedy elimination from ``m = M`` down to ``0`` on the extreme degree
    ``direction * m``; whatever is left over lies outside the span of
    ``phi_0 .. phi_M``.
    """
    delta = b.direction
    comps: List[Any] = [Fraction(0)] * (M + 1)
    rest = p
    for m in range(M, -1, -1):
        c = rest[delta * m]
        if c == 0:
            continue
        comp = c / b.extreme_coeff(m)
        comps[m] = comp
        rest = rest - b.element(m) * comp
    return comps, rest
