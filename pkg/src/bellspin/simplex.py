"""Dense phase-1 simplex for feasibility of ``A w = b, w >= 0``.

Bland's rule throughout, so the method terminates on degenerate problems.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PIVOT_TOL = 1e-11
FEASIBILITY_TOL = 1e-9


@dataclass
class Phase1Result:
    status: str  # "feasible", "infeasible" or "stalled"
    x: np.ndarray | None
    infeasibility: float
    farkas: np.ndarray | None  # y with y @ A <= 0 and y @ b > 0 when infeasible
    pivots: int


def phase1(A, b, pivot_tol: float = PIVOT_TOL, feas_tol: float = FEASIBILITY_TOL,
           max_pivots: int = 500) -> Phase1Result:
    A = np.array(A, dtype=float)
    b = np.array(b, dtype=float)
    m, n = A.shape
    flip = np.where(b < 0, -1.0, 1.0)
    A *= flip[:, None]
    b *= flip

    # Tableau columns: n originals, m artificials, rhs. Row m is the phase-1 cost row
    # holding reduced costs of "minimize sum of artificials".
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n:n + m] = np.eye(m)
    T[:m, -1] = b
    T[m, :] = -T[:m, :].sum(axis=0)
    T[m, n:n + m] = 0.0
    basis = list(range(n, n + m))

    pivots = 0
    status = "stalled"
    while pivots <= max_pivots:
        costs = T[m, :n + m]
        entering = next((j for j in range(n + m) if costs[j] < -pivot_tol), None)
        if entering is None:
            status = "optimal"
            break
        col = T[:m, entering]
        rows = [i for i in range(m) if col[i] > pivot_tol]
        if not rows:
            # Unbounded is impossible for phase 1 (objective bounded below by 0).
            break
        ratios = [T[i, -1] / col[i] for i in rows]
        best = min(ratios)
        ties = [i for i, r in zip(rows, ratios) if r <= best + pivot_tol]
        leaving = min(ties, key=lambda i: basis[i])
        T[leaving] /= T[leaving, entering]
        for i in range(m + 1):
            if i != leaving and T[i, entering] != 0.0:
                T[i] -= T[i, entering] * T[leaving]
        basis[leaving] = entering
        pivots += 1

    if status != "optimal":
        return Phase1Result("stalled", None, float("nan"), None, pivots)

    infeasibility = -T[m, -1]
    # Reduced cost of artificial k is 1 - y_k, so y = 1 - cost row on artificials;
    # undo the row flips to express y against the caller's A, b.
    y = (1.0 - T[m, n:n + m]) * flip
    if infeasibility > feas_tol:
        return Phase1Result("infeasible", None, float(infeasibility), y, pivots)
    x = np.zeros(n + m)
    for i, j in enumerate(basis):
        x[j] = T[i, -1]
    return Phase1Result("feasible", np.clip(x[:n], 0.0, None), float(infeasibility), None, pivots)
