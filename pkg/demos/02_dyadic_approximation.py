"""Pixelising sets: the level search and its limits.

For an outer regular measure every finite-measure set is approximated by
unions of dyadic cells, but the level needed depends on the set.  A family
that needs ever finer levels cannot be served by one level at once.
"""
from fractions import Fraction as F

from nba_lab import Box, NotFoundError, Region, find_level, make_Tm, probe_approximability
from nba_lab.catalog import MODELS, unit_square

square = unit_square()
strip = Region(2, [Box.from_bounds((0, F(1, 3)), (0, 1))])

rep = find_level(square, strip, F(1, 8))
print(f"strip [0,1/3) x [0,1): level {rep.level}, error {rep.error}, history {[str(e) for e in rep.history]}")

plane = MODELS["leb_R2"]()
blob = Region(2, [Box.from_bounds((-3, F(-5, 2)), (F(1, 3), 2))])
rep = find_level(plane, blob, F(1, 64))
print(f"box far from the origin in R^2: level {rep.level}, error {rep.error}")

try:
    find_level(square, make_Tm(3), F(1, 10**6), n_max=8)
except NotFoundError as exc:
    print(f"T_3 to within 1e-6 by level 8: not found, best error {exc.best}")

family = [make_Tm(m) for m in (1, 2, 3, 4)]
probe = probe_approximability(square, family, F(1, 4), n_max=10)
print("\nper-set levels for T_1..T_4 at eps^2 = 1/4:", [p.level for p in probe.per_set])
print("one level for all of them:", probe.uniform_level)
print("the levels grow with m, so for the whole sequence T_1, T_2, ... no single level works")
