"""
Zetas of SL(3), Sp(4) and G2
============================

Each preset fixes the residue order, the contour radii and a calibrated
normalization.  We check the functional equation, compare SL(3) with its
six-term closed form, and list the first G2 zeros.
"""

import numpy as np

from parazeta import PRESETS, eval_zeta_GP, fe_check, find_zeros, load_preset
from parazeta.acceptance import sl3_closed_form
from parazeta.specfun import completed_xi

for name in ("SL3/P21", "SL3/P12", "Sp4/P_long", "Sp4/P_short", "G2/P_long", "G2/P_short"):
    spec = load_preset(name)
    rep = fe_check(spec, n_samples=10)
    print(f"{name:12s} a={spec.norm.a:g}  clearing={spec.norm.clearing}  FE max rel dev {rep.max_rel:.1e}")

# SL(3): the calibrated zeta is 3/xi(2) times the six-term expression
spec = load_preset("SL3/P21")
rng = np.random.default_rng(0)
ratios = [eval_zeta_GP(spec, z) / sl3_closed_form(z) for z in rng.uniform(-1, 2, 5) + 1j * rng.uniform(-3, 3, 5)]
print("SL3 ratios:", np.round(ratios, 12), " 3/xi(2) =", 3 / completed_xi(2.0))

# G2 zeros below height 6 (the full run to 15 is acceptance criterion 4)
for name in ("G2/P_long", "G2/P_short"):
    rep = find_zeros(load_preset(name), 6.0)
    print(name, "count", rep.winding_count, "located", rep.located_count,
          "first:", [round(z.imag, 4) for z in rep.zeros[:5]])

print("all presets:", sorted(PRESETS))
