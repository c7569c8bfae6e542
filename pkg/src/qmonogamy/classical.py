"""Classical counterparts: joint distributions, Markov chains, and the
monogamy gap for Shannon mutual information.

Probabilities are stored as dense arrays, one axis per variable.  A chain
is an initial distribution plus column-stochastic transition matrices
T[next, prev]; its joint distribution factorizes step by step, which is
what `is_markov` checks on an arbitrary joint via vanishing conditional
mutual information between each variable and its pre-predecessors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "JointPMF",
    "ClassicalChain",
    "joint_pmf",
    "classical_chain",
    "joint_from_chain",
    "shannon_entropy",
    "classical_mi",
    "classical_cmi",
    "is_markov",
    "cmmi_gap",
    "random_chain",
]

PROB_CLIP = 1e-12


@dataclass(frozen=True, eq=False)
class JointPMF:
    """Joint distribution; probs.shape gives one dimension per variable."""

    probs: np.ndarray

    @property
    def n_vars(self) -> int:
        return self.probs.ndim

    @property
    def dims(self) -> tuple[int, ...]:
        return self.probs.shape


@dataclass(frozen=True, eq=False)
class ClassicalChain:
    """Initial distribution plus column-stochastic transitions T[next, prev]."""

    initial: np.ndarray
    transitions: tuple[np.ndarray, ...]

    @property
    def n_vars(self) -> int:
        return len(self.transitions) + 1


def joint_pmf(probs: np.ndarray) -> JointPMF:
    """Validate an array (sums to 1, no negative entries) into a JointPMF."""
    probs = np.asarray(probs, dtype=float)
    if probs.min() < -1e-15:
        raise ValueError(f"negative probability {probs.min():.3e}")
    total = probs.sum()
    if abs(total - 1.0) > 1e-12:
        raise ValueError(f"probabilities sum to {total!r}, not 1")
    return JointPMF(np.clip(probs, 0.0, None))


def classical_chain(initial: np.ndarray,
                    transitions: list[np.ndarray] | tuple[np.ndarray, ...],
                    ) -> ClassicalChain:
    """Validate stochasticity (columns sum to 1 within 1e-12) into a chain."""
    initial = np.asarray(initial, dtype=float)
    if initial.min() < 0 or abs(initial.sum() - 1.0) > 1e-12:
        raise ValueError("initial distribution is not a probability vector")
    transitions = tuple(np.asarray(t, dtype=float) for t in transitions)
    d = initial.shape[0]
    for i, t in enumerate(transitions):
        if t.shape[1] != d:
            raise ValueError(f"transition {i} expects {t.shape[1]} inputs, chain carries {d}")
        if t.min() < 0 or np.abs(t.sum(axis=0) - 1.0).max() > 1e-12:
            raise ValueError(f"transition {i} is not column stochastic")
        d = t.shape[0]
    return ClassicalChain(initial, transitions)


def joint_from_chain(c: ClassicalChain) -> JointPMF:
    """p(x1..xn) = p(x1) T1[x2,x1] T2[x3,x2] ..."""
    arr = c.initial
    for t in c.transitions:
        arr = arr[..., None] * t.T
    return joint_pmf(arr)


def _marginal(p: JointPMF, subset: tuple[int, ...]) -> np.ndarray:
    subset = tuple(sorted(set(subset)))
    drop = tuple(i for i in range(p.n_vars) if i not in subset)
    return p.probs.sum(axis=drop) if drop else p.probs


def shannon_entropy(p: JointPMF, subset: tuple[int, ...] | None = None) -> float:
    """H of the marginal over `subset` (all variables when omitted), in bits."""
    m = _marginal(p, subset) if subset is not None else p.probs
    w = m.reshape(-1)
    w = w[w > PROB_CLIP]
    return float(-np.sum(w * np.log2(w)))


def classical_mi(p: JointPMF, a: tuple[int, ...], b: tuple[int, ...]) -> float:
    """I(A:B) = H(A) + H(B) - H(AB)."""
    a, b = tuple(a), tuple(b)
    if set(a) & set(b):
        raise ValueError("variable sets overlap")
    return shannon_entropy(p, a) + shannon_entropy(p, b) - shannon_entropy(p, a + b)


def classical_cmi(p: JointPMF, a: tuple[int, ...], b: tuple[int, ...],
                  c: tuple[int, ...]) -> float:
    """I(A:B|C) = H(AC) + H(BC) - H(ABC) - H(C)."""
    a, b, c = tuple(a), tuple(b), tuple(c)
    if set(a) & set(b) or set(a) & set(c) or set(b) & set(c):
        raise ValueError("variable sets overlap")
    hc = shannon_entropy(p, c) if c else 0.0
    return (shannon_entropy(p, a + c) + shannon_entropy(p, b + c)
            - shannon_entropy(p, a + b + c) - hc)


def is_markov(p: JointPMF, tol: float = 1e-9) -> bool:
    """Whether each variable is independent of the deeper past given its
    predecessor: I(X_i : X_1..X_{i-2} | X_{i-1}) <= tol for every i >= 3."""
    for i in range(2, p.n_vars):
        past = tuple(range(i - 1))
        if classical_cmi(p, (i,), past, (i - 1,)) > tol:
            return False
    return True


def cmmi_gap(p: JointPMF, perm: tuple[int, ...]) -> float:
    """Permutation gap of Shannon mutual information over a 2n-variable joint.

    Variables are read as a chain rho_n .. rho_1 sigma_1 .. sigma_n, so
    rho_i sits at axis n-i and sigma_j at axis n+j-1.  The gap is
    sum_i I(rho_i:sigma_i) - sum_i I(rho_i:sigma_perm[i]), conjectured
    nonnegative for Markov joints and any permutation.
    """
    if p.n_vars % 2:
        raise ValueError(f"needs an even number of variables, got {p.n_vars}")
    n = p.n_vars // 2
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"perm must rearrange 1..{n}, got {perm}")
    # rho_i sits at axis n-i, sigma_j at axis n+j-1
    diag = sum(classical_mi(p, (n - i,), (n + i - 1,)) for i in range(1, n + 1))
    off = sum(classical_mi(p, (n - i,), (n + perm[i - 1] - 1,))
              for i in range(1, n + 1))
    return diag - off


def random_chain(n_vars: int, dim: int, seed: int | np.random.Generator = 0) -> ClassicalChain:
    """Chain with flat-Dirichlet initial distribution and transition columns."""
    if n_vars < 2:
        raise ValueError("a chain needs at least two variables")
    rng = np.random.default_rng(seed) if not isinstance(seed, np.random.Generator) else seed
    init = rng.exponential(size=dim)
    init /= init.sum()
    transitions = []
    for _ in range(n_vars - 1):
        t = rng.exponential(size=(dim, dim))
        t /= t.sum(axis=0, keepdims=True)
        transitions.append(t)
    return classical_chain(init, transitions)
