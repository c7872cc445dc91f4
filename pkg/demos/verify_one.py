"""Build one catalog solution at a fixed parameter set and check it exactly."""
from fractions import Fraction as F

from qvariant.equations import Family, ParamSet
from qvariant.solutions import SolutionId, construct
from qvariant.verify import verify_solution

p = ParamSet(family=Family.C12, q=F(1, 9), s=F(1, 3), t1=F(2), t2=F(-1, 2), A1=F(3), A2=F(5, 4),
             L1=F(2, 3), a1=F(7, 5), Lam=F(1, 2))
sol = construct(SolutionId.parse("C12:T31-ii"), p, 12)
print("first coefficients:", [str(c) for c in sol.coeffs[:4]])

rep = verify_solution(p, sol, 6)
print("passed:", rep.passed, "| first nonzero residual component:", rep.first_nonzero_index)

# pin Lam*a1 = q^-3 and the series stops after three terms
stop = construct(SolutionId.parse("C12:T31-ii"), p.with_(a1=1 / (p.q**3 * p.Lam)), 12)
print("terminates at index:", stop.terminated_at)
