"""Move an ascending solution through a first-order gauge factor and back."""
from qvariant.equations import Family, build_operator
from qvariant.gauge import check_correspondence_C12_C21, natural_gauge_factor, series_roundtrip
from qvariant.sampling import draw_admissible, rng_for
from qvariant.solutions import SolutionId, construct

sid = SolutionId.parse("C12:T32-i:12")
p, sol = draw_admissible(sid.family, rng_for(3, "demo"), lambda p: construct(sid, p, 12))
gf = natural_gauge_factor(build_operator(p), sol)
print("gauge factor:", gf)
print("roundtrip exact:", series_roundtrip(sol, gf, 12))

hits = sum(draw_admissible(Family.C12, rng_for(3, "corr", i), check_correspondence_C12_C21)[1] for i in range(10))
print(f"C12 -> C21 correspondence held on {hits}/10 draws")
