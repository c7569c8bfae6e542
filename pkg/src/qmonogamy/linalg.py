"""Dense complex linear algebra over multipartite Hilbert spaces.

Everything downstream (states, channels, entropies, process tensors) is
built on the handful of primitives in this module: tensor products,
partial traces over labelled subsystems, and Hermitian eigendecomposition.

Subsystem ordering convention: the leftmost tensor factor is the most
significant in the computational-basis index (big-endian).  A basis ket
|1,0,0> of three qubits is therefore the flat index 4 of an 8-dimensional
space.  A list of subsystem dimensions ("dims") annotates every
multipartite operator; the product of the dims must equal the matrix
dimension.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "kron",
    "dagger",
    "partial_trace",
    "hermitian_eig",
    "is_unitary",
    "apply_two_site",
]


def kron(*ops: np.ndarray) -> np.ndarray:
    """Tensor product of one or more operators, leftmost factor most significant."""
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op, dtype=complex))
    return out


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m).conj().T


def _check_signature(m: np.ndarray, dims: tuple[int, ...]) -> None:
    d = math.prod(dims)
    if m.shape != (d, d):
        raise ValueError(f"dims {dims} imply dimension {d}, matrix is {m.shape}")


def partial_trace(m: np.ndarray, dims: tuple[int, ...] | list[int],
                  keep: tuple[int, ...] | list[int]) -> np.ndarray:
    """Trace out all subsystems not listed in `keep`.

    Parameters
    ----------
    m : square operator over the tensor product of the subsystems in `dims`.
    dims : subsystem dimensions, leftmost factor most significant.
    keep : indices of the subsystems to retain, in their original order.

    Returns
    -------
    The reduced operator over the kept subsystems.
    """
    m = np.asarray(m, dtype=complex)
    dims = tuple(int(d) for d in dims)
    _check_signature(m, dims)
    keep = sorted(set(int(k) for k in keep))
    n = len(dims)
    if keep and (keep[0] < 0 or keep[-1] >= n):
        raise ValueError(f"keep indices {keep} out of range for {n} subsystems")
    t = m.reshape(dims + dims)
    # pair bra and ket axes of every traced subsystem in a single einsum
    ket = list(range(n))
    bra = list(range(n, 2 * n))
    for ax in range(n):
        if ax not in keep:
            bra[ax] = ket[ax]
    out_axes = [ket[a] for a in keep] + [bra[a] for a in keep]
    d_keep = math.prod(dims[a] for a in keep) if keep else 1
    return np.einsum(t, ket + bra, out_axes).reshape(d_keep, d_keep)


def hermitian_eig(m: np.ndarray, herm_tol: float = 1e-8) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    The input is symmetrized to (m + m†)/2 before decomposition to suppress
    round-off; a deviation from Hermiticity beyond `herm_tol` is an error,
    not something to silently average away.

    Returns
    -------
    (eigenvalues, eigenvectors) with eigenvalues sorted descending and the
    matching eigenvectors as columns of a unitary matrix.
    """
    m = np.asarray(m, dtype=complex)
    dev = np.abs(m - dagger(m)).max()
    if dev > herm_tol:
        raise ValueError(f"matrix is not Hermitian: max deviation {dev:.3e}")
    w, v = np.linalg.eigh((m + dagger(m)) / 2)
    return w[::-1].copy(), v[:, ::-1].copy()


def is_unitary(m: np.ndarray, tol: float = 1e-12) -> bool:
    """True iff ||m† m - 1||_max <= tol."""
    m = np.asarray(m, dtype=complex)
    if m.shape[0] != m.shape[1]:
        return False
    return bool(np.abs(dagger(m) @ m - np.eye(m.shape[0])).max() <= tol)


def apply_two_site(vec: np.ndarray, dims: tuple[int, ...], u: np.ndarray,
                   sites: tuple[int, int]) -> np.ndarray:
    """Apply a two-subsystem unitary to a flat state vector.

    `u` acts on the ordered pair of subsystems `sites` = (a, b); the result
    is returned flat with the original subsystem layout.  This is the only
    gate primitive circuit simulations need.
    """
    a, b = sites
    dims = tuple(int(d) for d in dims)
    t = np.asarray(vec, dtype=complex).reshape(dims)
    u4 = np.asarray(u, dtype=complex).reshape(dims[a], dims[b], dims[a], dims[b])
    t = np.tensordot(u4, t, axes=[[2, 3], [a, b]])
    # tensordot put the two output axes in front; restore original order
    t = np.moveaxis(t, [0, 1], [a, b])
    return t.reshape(-1)
