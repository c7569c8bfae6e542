"""Validated density matrices, pure states, and purification.

A DensityMatrix carries its subsystem-dimension signature alongside the
matrix, so partial traces and entropies downstream never need dimension
bookkeeping at the call site.  Validation thresholds: Hermiticity and unit
trace within 1e-10, minimum eigenvalue >= -1e-10.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import dagger, hermitian_eig, partial_trace

__all__ = [
    "DensityMatrix",
    "PureState",
    "density",
    "pure_state",
    "purify",
    "maximally_entangled",
    "random_density",
    "w_state",
]

HERM_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian PSD unit-trace operator with a subsystem signature."""

    mat: np.ndarray
    dims: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def reduced(self, keep: tuple[int, ...] | list[int]) -> "DensityMatrix":
        """Partial trace down to the subsystems in `keep` (original order)."""
        keep = sorted(set(keep))
        sub = partial_trace(self.mat, self.dims, keep)
        return DensityMatrix(sub, tuple(self.dims[k] for k in keep))


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit-norm state vector with a subsystem signature."""

    vec: np.ndarray
    dims: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.vec.shape[0]

    def density(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.vec, self.vec.conj()), self.dims)

    def reduced(self, keep: tuple[int, ...] | list[int]) -> DensityMatrix:
        # contract from the vector; never materializes the full outer product
        keep = sorted(set(keep))
        traced = [i for i in range(len(self.dims)) if i not in keep]
        t = self.vec.reshape(self.dims)
        sub = np.tensordot(t, t.conj(), axes=(traced, traced))
        d = math.prod(self.dims[k] for k in keep)
        return DensityMatrix(sub.reshape(d, d), tuple(self.dims[k] for k in keep))


def pure_state(vec: np.ndarray, dims: tuple[int, ...] | None = None) -> PureState:
    """Validate a vector (unit norm within 1e-12) into a PureState."""
    vec = np.asarray(vec, dtype=complex).reshape(-1)
    if dims is None:
        dims = (vec.shape[0],)
    dims = tuple(int(d) for d in dims)
    if math.prod(dims) != vec.shape[0]:
        raise ValueError(f"dims {dims} do not match vector length {vec.shape[0]}")
    nrm = np.linalg.norm(vec)
    if abs(nrm - 1.0) > 1e-12:
        raise ValueError(f"vector is not normalized: |norm - 1| = {abs(nrm - 1.0):.3e}")
    return PureState(vec, dims)


def density(m: np.ndarray, dims: tuple[int, ...] | None = None) -> DensityMatrix:
    """Validate a matrix into a DensityMatrix, reporting the failed invariant.

    Raises ValueError naming the violated property (Hermiticity, unit
    trace, or positivity) together with the measured deviation.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {m.shape}")
    if dims is None:
        dims = (m.shape[0],)
    dims = tuple(int(d) for d in dims)
    if math.prod(dims) != m.shape[0]:
        raise ValueError(f"dims {dims} do not match matrix dimension {m.shape[0]}")
    herm_dev = np.abs(m - dagger(m)).max()
    if herm_dev > HERM_TOL:
        raise ValueError(f"not Hermitian: max deviation {herm_dev:.3e}")
    trace_dev = abs(m.trace().real - 1.0) + abs(m.trace().imag)
    if trace_dev > TRACE_TOL:
        raise ValueError(f"not unit trace: deviation {trace_dev:.3e}")
    w, _ = hermitian_eig(m)
    if w[-1] < -PSD_TOL:
        raise ValueError(f"not positive semidefinite: min eigenvalue {w[-1]:.3e}")
    return DensityMatrix((m + dagger(m)) / 2, dims)


def purify(rho: DensityMatrix) -> PureState:
    """Purify `rho` with a reference register of the full dimension d.

    The output lives on reference (x) system with the reference as the first
    (most significant) subsystem: |psi> = sum_i sqrt(p_i) |i>_R |v_i>_S,
    pairing Schmidt coefficients sqrt(p_i) with the eigenvectors of rho.
    Tracing out the reference reproduces rho.
    """
    w, v = hermitian_eig(rho.mat)
    w = np.clip(w, 0.0, None)
    d = rho.dim
    # vec[i, :] = sqrt(p_i) v_i, flattened big-endian over (R, S)
    vec = (np.sqrt(w)[:, None] * v.T).reshape(-1)
    return PureState(vec, (d,) + rho.dims)


def maximally_entangled(d: int) -> PureState:
    """|Psi+> = d^{-1/2} sum_i |ii> over two d-dimensional registers."""
    if d < 2:
        raise ValueError("dimension must be at least 2")
    vec = np.eye(d, dtype=complex).reshape(-1) / np.sqrt(d)
    return PureState(vec, (d, d))


def random_density(d: int, rank: int | None = None,
                   seed: int | np.random.Generator = 0) -> DensityMatrix:
    """Random density matrix rho = G G† / Tr(G G†), G complex Gaussian d x rank."""
    rank = d if rank is None else int(rank)
    if not 1 <= rank <= d:
        raise ValueError(f"rank must be in [1, {d}], got {rank}")
    rng = np.random.default_rng(seed) if not isinstance(seed, np.random.Generator) else seed
    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    m = g @ dagger(g)
    return density(m / m.trace().real, (d,))


def w_state() -> PureState:
    """Equal-amplitude single-excitation state of three qubits.

    (|100> + |010> + |001>)/sqrt(3): every pair of registers is classically
    and quantum correlated, which is what makes it useful as an initially
    correlated reference-system-environment state.
    """
    vec = np.zeros(8, dtype=complex)
    vec[[4, 2, 1]] = 1.0 / np.sqrt(3.0)
    return PureState(vec, (2, 2, 2))
