"""Two spin-1/2 particles: local spin operators, singlet, CHSH operator.

States are complex 4-vectors over the product basis |00>, |01>, |10>, |11>,
with |0> the +1 eigenvector of sigma_z.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import math

import numpy as np

from .clifford import Direction
from .errors import DomainError
from .spinor import I2, spin_operator

STATE_TOL = 1e-12
TSIRELSON = 2.0 * math.sqrt(2.0)
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ChshSettings:
    """Measurement directions a0, a1 (Alice) and b0, b1 (Bob)."""

    a0: Direction
    a1: Direction
    b0: Direction
    b1: Direction

    def __post_init__(self):
        for name in ("a0", "a1", "b0", "b1"):
            if not isinstance(getattr(self, name), Direction):
                raise DomainError(f"{name} must be a Direction")

    @property
    def directions(self) -> tuple[Direction, Direction, Direction, Direction]:
        return (self.a0, self.a1, self.b0, self.b1)

    def alice(self, x: int) -> Direction:
        return (self.a0, self.a1)[x]

    def bob(self, y: int) -> Direction:
        return (self.b0, self.b1)[y]

    @classmethod
    def optimal(cls) -> "ChshSettings":
        """Coplanar (x-z plane) settings reaching 2*sqrt(2) on the singlet."""
        r = 1.0 / math.sqrt(2.0)
        return cls(Direction(0.0, 0.0, 1.0), Direction(1.0, 0.0, 0.0),
                   Direction(-r, 0.0, -r), Direction(r, 0.0, -r))

    @classmethod
    def uniform(cls, n: Direction) -> "ChshSettings":
        return cls(n, n, n, n)

    @classmethod
    def from_angles(cls, angles) -> "ChshSettings":
        """Build from ``(theta0, phi0, ..., theta3, phi3)`` in order a0, a1, b0, b1."""
        angles = np.asarray(angles, dtype=float)
        if angles.shape != (8,):
            raise DomainError("need 8 angles (theta, phi per direction)")
        return cls(*(Direction.from_angles(angles[2 * k], angles[2 * k + 1]) for k in range(4)))

    def to_angles(self) -> np.ndarray:
        out = []
        for d in self.directions:
            out += [math.acos(max(-1.0, min(1.0, d.z))), math.atan2(d.y, d.x)]
        return np.array(out)

    @classmethod
    def random(cls, rng: np.random.Generator) -> "ChshSettings":
        return cls(*(Direction.from_vector(v) for v in rng.normal(size=(4, 3))))


def kron(a, b) -> np.ndarray:
    return np.kron(np.asarray(a), np.asarray(b))


def sigma_a(n: Direction) -> np.ndarray:
    return kron(spin_operator(n), I2)


def sigma_b(n: Direction) -> np.ndarray:
    return kron(I2, spin_operator(n))


def singlet() -> np.ndarray:
    """(|01> - |10>)/sqrt(2); the global phase is a convention."""
    psi = np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / math.sqrt(2.0)
    psi.setflags(write=False)
    return psi


def check_state(state) -> np.ndarray:
    psi = np.asarray(state, dtype=complex)
    if psi.shape != (4,):
        raise DomainError(f"a two-qubit state has 4 amplitudes, got shape {psi.shape}")
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > STATE_TOL:
        raise DomainError(f"state must be normalized, got norm {norm:.15g}")
    return psi


def expectation(state, operator) -> complex:
    psi = check_state(state)
    return complex(np.vdot(psi, operator @ psi))


def correlation(state, a: Direction, b: Direction) -> float:
    """<psi| Sigma_A(a) Sigma_B(b) |psi>."""
    return expectation(state, sigma_a(a) @ sigma_b(b)).real


def chsh_operator(s: ChshSettings) -> np.ndarray:
    A0, A1 = sigma_a(s.a0), sigma_a(s.a1)
    B0, B1 = sigma_b(s.b0), sigma_b(s.b1)
    return A0 @ B0 + A0 @ B1 + A1 @ B0 - A1 @ B1


def chsh_expectation(state, s: ChshSettings) -> float:
    return expectation(state, chsh_operator(s)).real


def projector(n: Direction, outcome: int) -> np.ndarray:
    """Spectral projector of Sigma(n) onto eigenvalue ``outcome`` (+1 or -1)."""
    if outcome not in (1, -1):
        raise DomainError("outcome must be +1 or -1")
    return (I2 + outcome * spin_operator(n)) / 2


def born_probabilities(state, a: Direction, b: Direction) -> np.ndarray:
    """Joint outcome probabilities as a 2x2 array indexed [A, B], index 0 for +1, 1 for -1."""
    psi = check_state(state)
    probs = np.empty((2, 2))
    for i, oa in enumerate((1, -1)):
        pa = projector(a, oa)
        for j, ob in enumerate((1, -1)):
            probs[i, j] = np.vdot(psi, kron(pa, projector(b, ob)) @ psi).real
    # Round-off can push an exact zero slightly negative.
    return np.clip(probs, 0.0, None)


@dataclass
class TsirelsonResult:
    settings: ChshSettings
    value: float
    status: str  # "converged" or "budget_exhausted"
    sweeps: int
    evaluations: int
    max_seen: float
    start_index: int = 0
    history: list[float] = field(default_factory=list, repr=False)


def _golden_max(f, lo: float, hi: float, tol: float):
    c = hi - GOLDEN * (hi - lo)
    d = lo + GOLDEN * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - GOLDEN * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + GOLDEN * (hi - lo)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def tsirelson_search(initial: ChshSettings, max_sweeps: int = 200, angle_tol: float = 1e-10,
                     value_tol: float = 1e-14, grid: int = 12, state=None) -> TsirelsonResult:
    """Maximize the CHSH expectation over the 8 spherical angles of the settings.

    Coordinate-wise ascent: each angle is bracketed on a coarse grid around the
    full circle, then refined by golden-section search. The objective along a
    single angle is a sinusoid, so the grid bracket is always unimodal.
    """
    psi = singlet() if state is None else check_state(state)
    angles = initial.to_angles()
    evaluations = 0
    max_seen = -math.inf

    def objective(x: np.ndarray) -> float:
        nonlocal evaluations, max_seen
        evaluations += 1
        v = chsh_expectation(psi, ChshSettings.from_angles(x))
        max_seen = max(max_seen, v)
        return v

    current = objective(angles)
    history = [current]
    status = "budget_exhausted"
    sweeps = 0
    step = 2 * math.pi / grid
    for sweeps in range(1, max_sweeps + 1):
        before = current
        for k in range(8):
            trial = angles.copy()

            def along(t, k=k, trial=trial):
                trial[k] = t
                return objective(trial)

            base = angles[k]
            samples = [(along(base + step * g), base + step * g) for g in range(grid)]
            _, best_t = max(samples)
            t, v = _golden_max(along, best_t - step, best_t + step, angle_tol)
            if v > current:
                angles[k] = math.remainder(t, 2 * math.pi)
                current = v
        history.append(current)
        if current - before <= value_tol:
            status = "converged"
            break
    return TsirelsonResult(ChshSettings.from_angles(angles), current, status, sweeps,
                           evaluations, max_seen, history=history)


def tsirelson_multistart(restarts: int = 20, seed: int = 0, workers: int | None = None,
                         **kwargs) -> tuple[TsirelsonResult, list[TsirelsonResult]]:
    """Run :func:`tsirelson_search` from ``restarts`` random starts.

    Start ``i`` is drawn from ``default_rng([seed, i])`` so results do not depend on
    ``workers``. The best run wins; ties go to the lowest start index.
    """
    starts = [ChshSettings.random(np.random.default_rng([seed, i])) for i in range(restarts)]

    def run(i):
        res = tsirelson_search(starts[i], **kwargs)
        res.start_index = i
        return res

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, range(restarts)))
    else:
        results = [run(i) for i in range(restarts)]
    best = max(results, key=lambda r: (r.value, -r.start_index))
    return best, results


def chsh_operator_norm(s: ChshSettings, seed: int = 0, tol: float = 1e-10,
                       max_iter: int = 100_000) -> float:
    """Largest |eigenvalue| of the CHSH operator by power iteration on S^2."""
    op = chsh_operator(s)
    sq = op @ op
    rng = np.random.default_rng(seed)
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    v /= np.linalg.norm(v)
    lam = np.vdot(v, sq @ v).real
    for _ in range(max_iter):
        w = sq @ v
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0
        v = w / norm
        new = np.vdot(v, sq @ v).real
        # Residual of the eigen-equation bounds the eigenvalue error for Hermitian S^2.
        residual = np.linalg.norm(sq @ v - new * v)
        if abs(new - lam) <= tol * tol and residual <= tol:
            lam = new
            break
        lam = new
    return math.sqrt(max(lam, 0.0))
