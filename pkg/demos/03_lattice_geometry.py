"""
Rank-two lattices: h0, Riemann-Roch, stability, bridges
=======================================================
"""

import math

import numpy as np

from parazeta.lattice import (
    GroupPoint,
    LatticeBasis,
    arthur_truncation_one,
    degree,
    dual_lattice,
    fundamental_relation_check,
    h0,
    hn_polygon,
    is_semistable,
    micro_bridge_check,
    random_lattice,
    reduce_to_fundamental_domain,
)

square = LatticeBasis((1.0, 0.0), (0.0, 1.0))
skew = LatticeBasis((2.0, 0.0), (0.0, 0.5))
print("h0(Z^2) =", h0(square))

# Riemann-Roch: h0(L) - h0(L dual) = deg L
lat = random_lattice(np.random.default_rng(1))
print("RR:", h0(lat) - h0(dual_lattice(lat)), "vs deg", degree(lat))

for name, b in (("square", square), ("skew", skew)):
    tau, _ = reduce_to_fundamental_domain(b)
    print(f"{name}: tau={tau.z:.4f}  HN breakpoint={hn_polygon(b)(1.0):.4f}  {is_semistable(b)}")

# the three bridge identities at a few group points
for a1, x in ((math.exp(-1), 0.0), (1.05, 0.3), (0.5, -0.2)):
    g = GroupPoint(a1, x)
    print(f"a1={a1:.3f}: micro {micro_bridge_check(g, 0.2)}  fundamental {fundamental_relation_check(g, 0.2)}"
          f"  truncation {arthur_truncation_one(g, 0.2)}")
