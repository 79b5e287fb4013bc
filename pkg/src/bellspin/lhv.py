"""Local hidden-variable side of the CHSH scenario.

The hidden-variable space is modelled by the 16 deterministic strategies
(A0, A1, B0, B1) in {+1, -1}^4. A correlation vector (E00, E01, E10, E11) or a
full behaviour p(A, B | x, y) is local iff it is a convex mixture of the strategy
vertices. Membership is decided two independent ways: by evaluating the 8 CHSH
facets, and by a phase-1 simplex over the mixture weights.
"""
from __future__ import annotations

from dataclasses import dataclass
import itertools
from typing import NamedTuple

import numpy as np

from .bipartite import ChshSettings, born_probabilities, correlation, singlet
from .errors import DomainError, InvariantError
from .simplex import phase1

CLASSICAL_BOUND = 2
FACET_TOL = 1e-10
BOUNDARY_BAND = 1e-8
RANGE_SLACK = 1e-12
PROB_TOL = 1e-12
WEIGHT_TOL = 1e-10


class DeterministicStrategy(NamedTuple):
    a0: int
    a1: int
    b0: int
    b1: int

    def alice(self, x: int) -> int:
        return (self.a0, self.a1)[x]

    def bob(self, y: int) -> int:
        return (self.b0, self.b1)[y]

    def correlations(self) -> tuple[int, int, int, int]:
        return (self.a0 * self.b0, self.a0 * self.b1, self.a1 * self.b0, self.a1 * self.b1)

    def chsh(self) -> int:
        e00, e01, e10, e11 = self.correlations()
        return e00 + e01 + e10 - e11

    def behavior(self) -> "Behavior":
        p = np.zeros((2, 2, 2, 2))
        for x, y in itertools.product((0, 1), repeat=2):
            p[x, y, _outcome_index(self.alice(x)), _outcome_index(self.bob(y))] = 1.0
        return Behavior(p)


def _outcome_index(outcome: int) -> int:
    return 0 if outcome == 1 else 1


def enumerate_strategies() -> list[DeterministicStrategy]:
    """All 16 strategies, lexicographic in (a0, a1, b0, b1) with +1 before -1."""
    return [DeterministicStrategy(*s) for s in itertools.product((1, -1), repeat=4)]


STRATEGIES = enumerate_strategies()
VERTICES = np.array([s.correlations() for s in STRATEGIES], dtype=float)


@dataclass(frozen=True)
class CorrelationVector:
    e00: float
    e01: float
    e10: float
    e11: float

    def __post_init__(self):
        for name in ("e00", "e01", "e10", "e11"):
            v = float(getattr(self, name))
            if not np.isfinite(v) or abs(v) > 1.0 + RANGE_SLACK:
                raise DomainError(f"correlation {name}={v!r} is outside [-1, 1]")
            object.__setattr__(self, name, min(1.0, max(-1.0, v)))

    @classmethod
    def of(cls, values) -> "CorrelationVector":
        if isinstance(values, CorrelationVector):
            return values
        values = np.asarray(values, dtype=float).ravel()
        if values.shape != (4,):
            raise DomainError("a correlation vector has 4 entries")
        return cls(*values)

    @classmethod
    def from_state(cls, state, s: ChshSettings) -> "CorrelationVector":
        return cls(*(correlation(state, s.alice(x), s.bob(y))
                     for x, y in itertools.product((0, 1), repeat=2)))

    def as_array(self) -> np.ndarray:
        return np.array([self.e00, self.e01, self.e10, self.e11])


@dataclass(frozen=True)
class Facet:
    """CHSH inequality ``signs . E <= 2``; index 1 is E00 + E01 + E10 - E11."""

    index: int
    signs: tuple[int, int, int, int]
    bound: int = CLASSICAL_BOUND

    def evaluate(self, values) -> float:
        return float(np.dot(self.signs, np.asarray(values, dtype=float)))


def _chsh_facets() -> tuple[Facet, ...]:
    facets = []
    for overall in (1, -1):
        for negated in (3, 2, 1, 0):
            signs = [overall] * 4
            signs[negated] = -overall
            facets.append(Facet(len(facets) + 1, tuple(signs)))
    return tuple(facets)


FACETS = _chsh_facets()
CANONICAL_FACET = FACETS[0]
_FACET_BY_SIGNS = {f.signs: f for f in FACETS}


def chsh_value(c, signs=CANONICAL_FACET.signs) -> float:
    c = CorrelationVector.of(c)
    key = tuple(int(s) for s in signs)
    if key not in _FACET_BY_SIGNS or any(s != k for s, k in zip(signs, key)):
        raise DomainError(f"{signs!r} is not a CHSH sign pattern")
    return _FACET_BY_SIGNS[key].evaluate(c.as_array())


@dataclass(frozen=True)
class FacetCheck:
    satisfied: bool
    facet: Facet  # facet with the largest value
    value: float
    margin: float  # 2 - value; negative when violated
    on_boundary: bool


def facet_check(c) -> FacetCheck:
    values = CorrelationVector.of(c).as_array()
    scores = [f.evaluate(values) for f in FACETS]
    k = int(np.argmax(scores))
    value = scores[k]
    margin = CLASSICAL_BOUND - value
    return FacetCheck(value <= CLASSICAL_BOUND + FACET_TOL, FACETS[k], value, margin,
                      abs(margin) <= BOUNDARY_BAND)


@dataclass(frozen=True)
class ConvexDecomposition:
    """Probability weights over :data:`STRATEGIES`."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        if w.shape != (16,):
            raise DomainError("a decomposition has 16 weights")
        if np.any(w < -WEIGHT_TOL):
            raise DomainError(f"negative weight {w.min():.3g}")
        w = np.clip(w, 0.0, None)
        if abs(w.sum() - 1.0) > WEIGHT_TOL:
            raise DomainError(f"weights sum to {w.sum():.15g}, not 1")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls) -> "ConvexDecomposition":
        return cls(np.full(16, 1 / 16))

    @classmethod
    def point(cls, strategy: DeterministicStrategy) -> "ConvexDecomposition":
        w = np.zeros(16)
        w[STRATEGIES.index(strategy)] = 1.0
        return cls(w)

    def correlations(self) -> np.ndarray:
        return self.weights @ VERTICES

    def behavior_array(self) -> np.ndarray:
        return sum(w * s.behavior().probabilities for w, s in zip(self.weights, STRATEGIES))

    def support(self, tol: float = 1e-12) -> dict[DeterministicStrategy, float]:
        return {s: float(w) for s, w in zip(STRATEGIES, self.weights) if w > tol}


class Behavior:
    """Conditional outcome table p(A, B | x, y), stored as array ``[x, y, A, B]``.

    Outcome index 0 is +1, index 1 is -1. A flat 16-vector is read in that same
    C order.
    """

    def __init__(self, probabilities):
        p = np.array(probabilities, dtype=float).reshape(2, 2, 2, 2) \
            if np.size(probabilities) == 16 else None
        if p is None:
            raise DomainError("a behaviour has 16 probabilities")
        if not np.all(np.isfinite(p)) or p.min() < -PROB_TOL:
            raise DomainError("probabilities must be finite and nonnegative")
        for x, y in itertools.product((0, 1), repeat=2):
            total = p[x, y].sum()
            if abs(total - 1.0) > PROB_TOL:
                raise DomainError(f"p(.,.|x={x},y={y}) sums to {total:.15g}, not 1")
        alice = p.sum(axis=3)  # [x, y, A]
        bob = p.sum(axis=2)    # [x, y, B]
        for x in (0, 1):
            gap = np.max(np.abs(alice[x, 0] - alice[x, 1]))
            if gap > PROB_TOL:
                raise DomainError(f"signalling: p(A|x={x},y=0) != p(A|x={x},y=1) (off by {gap:.3g})")
        for y in (0, 1):
            gap = np.max(np.abs(bob[0, y] - bob[1, y]))
            if gap > PROB_TOL:
                raise DomainError(f"signalling: p(B|x=0,y={y}) != p(B|x=1,y={y}) (off by {gap:.3g})")
        p = np.clip(p, 0.0, None)
        p.setflags(write=False)
        self.probabilities = p

    @classmethod
    def from_state(cls, state, s: ChshSettings) -> "Behavior":
        p = np.empty((2, 2, 2, 2))
        for x, y in itertools.product((0, 1), repeat=2):
            p[x, y] = born_probabilities(state, s.alice(x), s.bob(y))
        return cls(p)

    def alice_means(self) -> np.ndarray:
        """<A_x> for x = 0, 1 (read at y = 0)."""
        p = self.probabilities
        return np.array([p[x, 0, 0].sum() - p[x, 0, 1].sum() for x in (0, 1)])

    def bob_means(self) -> np.ndarray:
        p = self.probabilities
        return np.array([p[0, y, :, 0].sum() - p[0, y, :, 1].sum() for y in (0, 1)])

    def correlations(self) -> CorrelationVector:
        signs = np.array([[1, -1], [-1, 1]])
        p = self.probabilities
        return CorrelationVector(*((p[x, y] * signs).sum()
                                   for x, y in itertools.product((0, 1), repeat=2)))

    def no_signalling_coordinates(self) -> np.ndarray:
        """(<A0>, <A1>, <B0>, <B1>, E00, E01, E10, E11)."""
        return np.concatenate([self.alice_means(), self.bob_means(), self.correlations().as_array()])


@dataclass(frozen=True)
class MembershipResult:
    status: str  # "feasible", "infeasible" or "stalled"
    decomposition: ConvexDecomposition | None = None
    facet: Facet | None = None
    facet_value: float | None = None
    farkas: np.ndarray | None = None
    infeasibility: float = 0.0

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"


def _witness_facet(direction: np.ndarray, values: np.ndarray) -> tuple[Facet | None, float | None]:
    """CHSH facet best aligned with the Farkas hyperplane normal, if it separates ``values``."""
    norm = np.linalg.norm(direction)
    if norm == 0.0:
        return None, None
    ranked = sorted(FACETS, key=lambda f: -np.dot(f.signs, direction) / norm)
    for f in ranked:
        v = f.evaluate(values)
        if v > CLASSICAL_BOUND + FACET_TOL:
            return f, v
    return None, None


def _solve(A: np.ndarray, b: np.ndarray, correlations: np.ndarray,
           correlation_rows: slice) -> MembershipResult:
    res = phase1(A, b)
    if res.status == "stalled":
        return MembershipResult("stalled")
    if res.status == "infeasible":
        facet, value = _witness_facet(res.farkas[correlation_rows], correlations)
        if facet is None:
            # The LP separated the point but no CHSH facet does: numerically unresolved.
            return MembershipResult("stalled", farkas=res.farkas, infeasibility=res.infeasibility)
        return MembershipResult("infeasible", facet=facet, facet_value=value,
                                farkas=res.farkas, infeasibility=res.infeasibility)
    w = _centre(A, b, res.x / res.x.sum())
    return MembershipResult("feasible", decomposition=ConvexDecomposition(w),
                            infeasibility=res.infeasibility)


def _centre(A: np.ndarray, b: np.ndarray, vertex: np.ndarray) -> np.ndarray:
    """Move a basic solution towards the uniform-closest solution of ``A w = b``.

    The least-squares correction of the uniform weights satisfies the equalities
    but may go negative; take the largest step from ``vertex`` towards it that
    keeps every weight nonnegative.
    """
    uniform = np.full(A.shape[1], 1.0 / A.shape[1])
    target = uniform + np.linalg.lstsq(A, b - A @ uniform, rcond=None)[0]
    if np.max(np.abs(A @ target - b)) > 1e-12:
        return vertex
    step = target - vertex
    shrinking = step < 0
    t = min(1.0, np.min(vertex[shrinking] / -step[shrinking])) if shrinking.any() else 1.0
    w = np.clip(vertex + t * step, 0.0, None)
    return w / w.sum()


def lp_membership(c) -> MembershipResult:
    """Decompose a correlation vector into deterministic strategies, or certify it cannot be."""
    values = CorrelationVector.of(c).as_array()
    A = np.vstack([np.ones(16), VERTICES.T])
    b = np.concatenate([[1.0], values])
    return _solve(A, b, values, slice(1, 5))


_NS_VERTICES = np.array([[s.a0, s.a1, s.b0, s.b1, *s.correlations()] for s in STRATEGIES], dtype=float)


def lp_membership_behavior(b: Behavior) -> MembershipResult:
    """Local-model test on a full behaviour.

    A no-signalling behaviour is fixed by its 8 coordinates (marginal means and
    correlations), so the 16 outcome equalities reduce to those 8 plus normalization.
    """
    if not isinstance(b, Behavior):
        b = Behavior(b)
    coords = b.no_signalling_coordinates()
    A = np.vstack([np.ones(16), _NS_VERTICES.T])
    rhs = np.concatenate([[1.0], coords])
    return _solve(A, rhs, coords[4:], slice(5, 9))


@dataclass(frozen=True)
class ViolationCertificate:
    facet_index: int
    signs: tuple[int, int, int, int]
    classical_bound: int
    value: float
    gap: float


@dataclass(frozen=True)
class EmbeddingVerdict:
    settings: ChshSettings
    correlations: CorrelationVector
    verdict: str  # "non-embeddable" or "classically representable"
    certificate: ViolationCertificate | None
    decomposition: ConvexDecomposition | None
    on_boundary: bool


def non_embeddability_certificate(s: ChshSettings, state=None) -> EmbeddingVerdict:
    """Check whether the quantum correlations at ``s`` admit a local model.

    Facet evaluation and the LP must agree; a disagreement outside the boundary
    band raises :class:`InvariantError`.
    """
    psi = singlet() if state is None else state
    corr = CorrelationVector.from_state(psi, s)
    check = facet_check(corr)
    lp = lp_membership(corr)
    if lp.status == "stalled" and not check.on_boundary:
        raise InvariantError(f"LP stalled away from the boundary for {corr}")
    if not check.on_boundary and lp.status != "stalled" and lp.feasible != check.satisfied:
        raise InvariantError(
            f"facet check ({'local' if check.satisfied else 'nonlocal'}) and LP ({lp.status}) disagree for {corr}")

    if not check.satisfied or lp.status == "infeasible":
        facet = lp.facet if lp.facet is not None else check.facet
        value = facet.evaluate(corr.as_array())
        cert = ViolationCertificate(facet.index, facet.signs, CLASSICAL_BOUND, value,
                                    abs(value) - CLASSICAL_BOUND)
        return EmbeddingVerdict(s, corr, "non-embeddable", cert, None, check.on_boundary)
    return EmbeddingVerdict(s, corr, "classically representable", None, lp.decomposition,
                            check.on_boundary)
