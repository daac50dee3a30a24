"""Finite eps-nets for summable atom weights, and what breaks without them."""
from fractions import Fraction as F

from nba_lab import PreconditionError, build_net, discrete_family, exhaustive_net_check, verify_net
from nba_lab.catalog import MODELS
from nba_lab.witness import find_uncovered

geo = MODELS["geometric_half"]()  # weights 1/2, 1/4, 1/8, ...
for eps in (F(1, 2), F(1, 4), F(1, 8)):
    net = build_net(geo, eps)
    print(f"eps^2={eps}: head {list(net.head)}, tail mass {net.tail_mass}, {net.cardinality} elements, "
          f"sampled check {verify_net(geo, net)}, exhaustive check {exhaustive_net_check(geo, net, eps, 6)}")

net = build_net(geo, F(1, 4))
gap = find_uncovered(geo, net.without(5))
print(f"\ndrop element 5 of the 1/4-net and {gap} is left uncovered")

counting = MODELS["counting_N"]()
try:
    build_net(counting, F(1, 4))
except PreconditionError as exc:
    print(f"\ncounting measure: {exc} [{exc.citation}]")
fam = discrete_family(counting, 6)
print(f"singletons {{1}}..{{6}} are pairwise at squared distance {fam.min_pairwise}; "
      f"balls of squared radius {fam.radius_sq_bound} hold at most one of them")
