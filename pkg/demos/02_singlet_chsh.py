"""
Singlet correlations and the Tsirelson bound
============================================

The singlet is annihilated by the total spin along every axis, gives
E(a, b) = -a.b, and reaches 2 sqrt(2) on the CHSH operator.
"""

import numpy as np

from bellspin.bipartite import (ChshSettings, chsh_expectation, chsh_operator_norm, correlation,
                                sigma_a, sigma_b, singlet, tsirelson_multistart)
from bellspin.clifford import Direction

psi = singlet()
n = Direction.from_vector([0.3, -1.2, 0.4])
print("|(Sigma_A + Sigma_B) psi| =", np.linalg.norm((sigma_a(n) + sigma_b(n)) @ psi))

a = Direction.from_vector([1, 0, 1])
b = Direction.from_vector([0, 1, 1])
print(f"E(a,b) = {correlation(psi, a, b):+.12f}   -a.b = {-a.dot(b):+.12f}")

s = ChshSettings.optimal()
print("correlation table:")
for x in (0, 1):
    print("   ", "  ".join(f"{correlation(psi, s.alice(x), s.bob(y)):+.6f}" for y in (0, 1)))
print("CHSH expectation:", chsh_expectation(psi, s))
print("operator norm:   ", chsh_operator_norm(s))
print("2 sqrt 2:        ", 2 * np.sqrt(2))

# Random settings never exceed the bound; multi-start search reaches it.
rng = np.random.default_rng(0)
print("max over 2000 random settings:",
      max(chsh_expectation(psi, ChshSettings.random(rng)) for _ in range(2000)))
best, runs = tsirelson_multistart(restarts=5, seed=1)
print("best of 5 searches:", best.value, f"({best.sweeps} sweeps, {best.status})")
