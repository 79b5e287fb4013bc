"""
Spin as a bivector in Cl(3)
===========================

Build the bivector generators, map them to 2x2 matrices and recover the
Hermitian spin observable along a direction.
"""

import numpy as np

from bellspin.clifford import E1, E2, E3, J1, J2, J3, PSEUDOSCALAR, Direction, bivector_from_direction
from bellspin.spinor import eigenvalues_2x2, rho, spin_operator

# The generators square to +1 and anticommute.
print("e1 e1       =", E1 * E1)
print("e1e2 + e2e1 =", E1 * E2 + E2 * E1)

# Bivectors: J1 = e3e2, J2 = e1e3, J3 = e2e1, the duals -I e_k of the vectors.
print("J1 J1 =", J1 * J1)
print("J1 J2 =", J1 * J2, " (J3 =", J3, ")")
print("-I e1 =", -(PSEUDOSCALAR * E1))

# The representation sends J_k to -i sigma_k.
np.set_printoptions(precision=4, suppress=True)
print("rho(J3) =\n", rho(J3))

# Spin along n: i rho(J(n)) = n . sigma, with spectrum {-1, +1}.
n = Direction.from_vector([1, 1, 1])
J = bivector_from_direction(n).to_multivector()
print("J(n)^2  =", J * J)
print("Sigma(n) =\n", spin_operator(n))
print("eigenvalues:", eigenvalues_2x2(spin_operator(n)))
