"""
The local polytope and a non-embeddability certificate
======================================================

Local hidden-variable models are mixtures of 16 deterministic strategies.
A correlation vector is local iff every CHSH facet holds; the singlet at
the optimal settings violates one, and no mixture reproduces it.
"""

import numpy as np

from bellspin.bipartite import ChshSettings
from bellspin.lhv import FACETS, enumerate_strategies, facet_check, lp_membership, non_embeddability_certificate

for s in enumerate_strategies()[:4]:
    print(s, "correlations", s.correlations(), "CHSH", s.chsh())
print("... all 16 give CHSH in", sorted({s.chsh() for s in enumerate_strategies()}))
print("facets:", [f.signs for f in FACETS])

# A point inside the polytope comes with an explicit mixture.
inside = lp_membership([0.5, 0.5, 0.5, -0.2])
print("\nlocal:", inside.status)
for strategy, w in inside.decomposition.support().items():
    print(f"   {w:.4f}  {strategy}")

# The singlet correlations do not.
r = 1 / np.sqrt(2)
outside = lp_membership([r, r, r, -r])
print("\nsinglet:", outside.status, "separating facet", outside.facet.signs, "value", outside.facet_value)
print("facet check agrees:", facet_check([r, r, r, -r]))

verdict = non_embeddability_certificate(ChshSettings.optimal())
print("\nverdict:", verdict.verdict)
print("certificate:", verdict.certificate)
