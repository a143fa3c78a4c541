"""
Langlands' combinatorial lemma and its companions
=================================================

tau and tau_hat are indicators of the acute and obtuse cones; their
alternating sums over intermediate parabolics collapse to a delta.
"""

from parazeta.rootdata import build_root_system
from parazeta.truncomb import IDENTITIES, identity_check, tau, tau_hat

a2 = build_root_system("A2")
for H in ((3, 1), (1, -1), (-1, 2)):
    print(H, "tau:", tau(a2, (), (0, 1), H), "tau_hat:", tau_hat(a2, (), (0, 1), H))

for label in ("A2", "G2", "A3"):
    for name in IDENTITIES:
        rep = identity_check(label, name, samples=2000)
        print(f"{label} {name:15s} {rep.mode:10s} checked={rep.checked:6d} violations={len(rep.violations)}")
