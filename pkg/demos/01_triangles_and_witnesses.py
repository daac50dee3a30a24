"""Why the Lebesgue measure algebra of the unit square is not compact.

Every level-m union of dyadic cells sits at squared distance exactly 1/2
from T_m (the lower-right halves of the level-m cells), and the small
witnesses T_m^eps stay eps away from every cell union while lying in the
closed eps-ball around the empty set.
"""
from fractions import Fraction as F

from nba_lab import Region, dist_sq, make_Tm, make_Tm_eps, measure, standard_filtration, verify_cell_witness
from nba_lab.approx import best_approximation
from nba_lab.catalog import unit_square
from nba_lab.svg import render

model = unit_square()

print("T_m has measure 1/2 at every level:")
for m in range(1, 6):
    print(f"  m={m}: {len(make_Tm(m).primitives):5d} pieces, measure {measure(make_Tm(m))}")

# the best a level-m union can do against T_m
print("\nbest level-n approximation of T_m (exact squared error):")
for m in (1, 2, 3):
    row = []
    for n in range(1, 6):
        _, err = best_approximation(model, standard_filtration(model, n), make_Tm(m))
        row.append(str(err))
    print(f"  T_{m}: " + "  ".join(row))
print("  at n <= m the error is pinned at 1/2; past m it halves per level")

# T_m^eps: eps-close to the empty set, eps-far from every level-m union
print("\ncell witnesses T_m^eps:")
for m in (1, 2, 3):
    for eps in (F(1, 16), F(1, 4)):
        rep = verify_cell_witness(model, m, eps)
        d0 = dist_sq(model, Region.empty(2), rep.witness)
        print(f"  m={m} eps^2={eps}: d^2(empty, T)={d0}, best level-{m} error={rep.error}, holds={rep.verdict}")

svg = render([(make_Tm(2), None), (make_Tm_eps(2, F(1, 16)), None)], grid_level=2)
print(f"\nrendered T_2 and T_2^(1/16): {len(svg)} bytes of SVG")
