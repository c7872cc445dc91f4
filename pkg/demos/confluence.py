"""Walk the degeneration arrows, then watch the C12 series approach Kummer's 1F1."""
from fractions import Fraction as F

from qvariant.limits import ARROWS, Exponents, degeneration_check, kummer_limit_study
from qvariant.sampling import draw_admissible, rng_for

for name, arrow in ARROWS.items():
    _, res = draw_admissible(arrow.target, rng_for(1, name), lambda p: degeneration_check(arrow, p, F(1, 7)))
    print(f"{name:8s} passed={res.passed}")

table = kummer_limit_study(1, Exponents(lam=1, alpha1=1, h1=2, l1=1), ["1/10", "1/100", "1/1000"], K=8)
print(table.to_csv())
