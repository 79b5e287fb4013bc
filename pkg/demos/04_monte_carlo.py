"""
Simulated CHSH runs
===================

Sample trials from the singlet's Born probabilities and from a local model
on the classical bound, and compare the estimated CHSH statistics.
"""

import numpy as np

from bellspin.bipartite import ChshSettings
from bellspin.lhv import STRATEGIES, ConvexDecomposition
from bellspin.montecarlo import simulate_lhv, simulate_quantum

q = simulate_quantum(ChshSettings.optimal(), n_trials=1_000_000, seed=42)
print("quantum:  S =", f"{q.chsh:.5f} +- {q.chsh_std_error:.5f}")
print("          E =\n", np.round(q.correlations, 4))

# Uniform mixture of the strategies that saturate the canonical CHSH facet.
w = np.array([s.chsh() == 2 for s in STRATEGIES], dtype=float)
lhv = simulate_lhv(ConvexDecomposition(w / w.sum()), n_trials=1_000_000, seed=42)
print("local:    S =", f"{lhv.chsh:.5f} +- {lhv.chsh_std_error:.5f}")
print("violation in standard errors:", (q.chsh - 2) / q.chsh_std_error)
