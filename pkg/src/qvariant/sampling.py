"""Seeded random draws of admissible parameter sets."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Optional, TypeVar

from .equations import FAMILY_GENERATORS, ConstraintError, Family, ParamSet

__all__ = ["RETRY_BUDGET", "Resample", "random_rational", "random_params", "draw_admissible", "rng_for"]

RETRY_BUDGET = 20
MAX_HEIGHT = 64

T = TypeVar("T")


class Resample(Exception):
    """Raised by acceptance callbacks to request a fresh draw."""


def rng_for(seed: int, *tags: object) -> random.Random:
    # string seeds hash deterministically across runs and platforms
    return random.Random(":".join([str(seed), *map(str, tags)]))


def random_rational(rng: random.Random, height: int = MAX_HEIGHT) -> Fraction:
    return Fraction(rng.randint(1, height), rng.randint(1, height))


def _random_unit(rng: random.Random, height: int) -> Fraction:
    """A rational in (0, 1) with numerator and denominator at most ``height``."""
    while True:
        a, b = rng.randint(1, height), rng.randint(1, height)
        if a != b:
            return Fraction(min(a, b), max(a, b))


def random_params(fam: Family, rng: random.Random, height: int = MAX_HEIGHT, **fixed) -> ParamSet:
    """One random parameter set for ``fam``; ``fixed`` pins chosen generators.

    ``s`` is drawn in (0, 1) and ``q = s^2``. For D2 the generator ``L2`` is
    solved from the degree-two constraint unless pinned.
    """
    s = Fraction(fixed.pop("s")) if "s" in fixed else _random_unit(rng, height)
    g = {"s": s, "q": s * s}
    for k in FAMILY_GENERATORS[fam]:
        if k in g:
            continue
        g[k] = Fraction(fixed[k]) if k in fixed else random_rational(rng, height)
    if fam is Family.D2 and "L2" not in fixed:
        g["L2"] = g["q"] * g["A1"] * g["A2"] / (g["L1"] * g["a1"] * g["a2"] * g["Lam"] ** 2)
    return ParamSet(family=fam, **g)


def draw_admissible(fam: Family, rng: random.Random, accept: Callable[[ParamSet], T],
                    budget: int = RETRY_BUDGET, **fixed) -> tuple:
    """Draw until ``accept(params)`` returns without raising a resample signal.

    ``accept`` may raise :class:`Resample`, :class:`ConstraintError` or
    ``ZeroDivisionError`` (degenerate denominators); after ``budget`` failed
    draws the last error propagates.
    """
    last: Optional[Exception] = None
    for _ in range(budget):
        p = random_params(fam, rng, **fixed)
        try:
            return p, accept(p)
        except (Resample, ConstraintError, ZeroDivisionError) as exc:
            last = exc
    raise Resample(f"no admissible {fam.value} draw in {budget} attempts: {last}")
