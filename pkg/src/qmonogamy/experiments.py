"""The lambda-parameterized example circuit, its witness sweeps, and the
randomized verification harnesses.

The example: a three-qubit register (R, S, E) starts in the pure state
with amplitude 1/sqrt(3) on |100>, |010>, |001>, and the same two-qubit
unitary u_lambda acts on (S, E) three times, giving four global states
gamma_1..gamma_4.  Witness rows evaluate the entropy combinations of the
witnesses directly on those states.  Note the M4 row uses the sum
[H(R,S,E) - H(R,S)] at gamma_4 plus [H(R,S) - H(R,S,E)] at gamma_3; with
a minus sign between the brackets the quantity is nonpositive for every
pure global state and cannot reproduce the reported violation regions,
so the sign is pinned by the region structure itself.

Randomized harnesses draw Markov processes from Haar dilations and
report worst-case witness values, certificate mismatches, adjoint-map
deviations, mutual-information monotonicity gaps, and the classical
monogamy gap.  Every harness is deterministic given its seed; sample i
uses seed + i so a reported counterexample can be rebuilt in isolation.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

import numpy as np

from .channels import (adjoint_channel, apply_to_subsystem, dilation_to_kraus,
                       random_channel, stinespring)
from .classical import cmmi_gap, joint_from_chain, random_chain
from .info import conditional_mutual_information, von_neumann
from .linalg import kron
from .process_tensor import mqmmi_witness, system_env_circuit
from .states import DensityMatrix, density, maximally_entangled, random_density, w_state
from .witnesses import (GAP_TOLERANCE, MarkovChainProcess, cqmi_monotonicity_gap,
                        extra_dpi_witnesses, m4_ssa_certificate, m4_witness,
                        m6_ssa_certificates, m6_witnesses, m8_ssa_certificates,
                        m8_witnesses, markov_process, mi_dpi_gap, qdpi_witnesses)

__all__ = [
    "u_lambda",
    "gamma_sequence",
    "nonmarkov_witness_row",
    "extra_dpi_row",
    "mqmmi_row",
    "lambda_grid",
    "sweep",
    "parallel_map",
    "random_markov_process",
    "random_markov_verify",
    "adjoint_identity_check",
    "mi_monotonicity_check",
    "classical_cmmi_check",
]


def u_lambda(lam: float) -> np.ndarray:
    """The example's two-qubit step unitary, interpolating two permutations.

    Acts on (S, E) in the computational basis |00>, |01>, |10>, |11>.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    s, c = math.sqrt(lam), math.sqrt(1.0 - lam)
    return np.array([
        [0.0, -c, s, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, s, c, 0.0],
    ], dtype=complex)


def gamma_sequence(lam: float) -> list[DensityMatrix]:
    """gamma_1 = |psi><psi|, gamma_{i+1} = (1_R x U) gamma_i (1_R x U)†."""
    psi = w_state()
    u_full = kron(np.eye(2), u_lambda(lam))
    states = [psi.density()]
    for _ in range(3):
        prev = states[-1]
        states.append(DensityMatrix(u_full @ prev.mat @ u_full.conj().T, prev.dims))
    return states


def _h_s(g: DensityMatrix) -> float:
    return von_neumann(g.reduced((1,)))


def _h_rs(g: DensityMatrix) -> float:
    return von_neumann(g.reduced((0, 1)))


def _h_rse(g: DensityMatrix) -> float:
    return von_neumann(g)


def nonmarkov_witness_row(lam: float) -> dict[str, float]:
    """DP1..DP4 and M4 of the example, straight from the entropy forms."""
    _, g2, g3, g4 = gamma_sequence(lam)
    ic2 = _h_s(g2) - _h_rs(g2)
    ic3 = _h_s(g3) - _h_rs(g3)
    ic4 = _h_s(g4) - _h_rs(g4)
    return {
        "lambda": lam,
        "DP1": ic2 - ic3,
        "DP2": ic2 - ic4,
        "DP3": ic3 - ic4,
        "DP4": (_h_s(g3) - _h_rse(g3)) - (_h_s(g4) - _h_rse(g4)),
        "M4": (_h_rse(g4) - _h_rs(g4)) + (_h_rs(g3) - _h_rse(g3)),
    }


def extra_dpi_row(lam: float) -> dict[str, float]:
    """DP5..DP7 on the example plus DP5 on a genuinely Markov reference.

    The reference runs the same u_lambda twice, but from a maximally
    entangled (R, S) pair with a fresh |0> ancilla per step, so the
    process is Markov by construction.
    """
    _, g2, g3, g4 = gamma_sequence(lam)
    row = {
        "lambda": lam,
        "DP5_markov": _markov_reference_dp5(lam),
        "DP5": (_h_s(g3) - _h_rse(g3)) - (_h_s(g3) - _h_rs(g3)),
        "DP6": (_h_s(g3) - _h_rse(g3)) - (_h_s(g4) - _h_rs(g4)),
        "DP7": (_h_s(g4) - _h_rse(g4)) - (_h_s(g4) - _h_rs(g4)),
    }
    return row


def _markov_reference_dp5(lam: float) -> float:
    anc = np.array([1.0, 0.0], dtype=complex)
    ch = dilation_to_kraus(stinespring(u_lambda(lam), anc, 2, 2))
    proc = markov_process(density(np.eye(2) / 2), [ch, ch])
    return extra_dpi_witnesses(proc).entries["DP5"]


def mqmmi_row(lam: float) -> dict[str, float]:
    """The three interventional monogamy witnesses on the example circuit."""
    circuit = system_env_circuit(w_state(), [u_lambda(lam)] * 3)
    return {
        "lambda": lam,
        "M4_q1": mqmmi_witness(circuit, "q1"),
        "M4_q2": mqmmi_witness(circuit, "q2"),
        "M4_q3": mqmmi_witness(circuit, "q3"),
    }


# ---------------------------------------------------------------------------
# sweep plumbing
# ---------------------------------------------------------------------------

def lambda_grid(lo: float = 0.0, hi: float = 1.0, step: float = 0.01) -> list[float]:
    """Inclusive grid lo, lo+step, ..., capped at hi (fp-slack at the end)."""
    if not (0.0 <= lo <= hi <= 1.0):
        raise ValueError(f"grid must satisfy 0 <= lo <= hi <= 1, got [{lo}, {hi}]")
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    n = int(math.floor((hi - lo) / step + 1e-9))
    return [min(lo + k * step, hi) for k in range(n + 1)]


def parallel_map(fn: Callable, items: Sequence) -> list:
    """Map preserving order; worker count capped by QMONOGAMY_THREADS."""
    env = os.environ.get("QMONOGAMY_THREADS", "")
    workers = int(env) if env.strip() else (os.cpu_count() or 1)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def sweep(row_fn: Callable[[float], dict[str, float]],
          grid: Sequence[float]) -> list[dict[str, float]]:
    """Evaluate a row function over the grid, in parallel, rows in grid order."""
    return parallel_map(row_fn, list(grid))


# ---------------------------------------------------------------------------
# randomized verification
# ---------------------------------------------------------------------------

def random_markov_process(n_states: int, seed: int,
                          d_sys: int = 2,
                          d_env: int | Sequence[int] = 2) -> MarkovChainProcess:
    """Process with a random initial state and Haar-dilation channels.

    `d_env` may be a single environment dimension or one per channel.
    """
    if n_states < 2:
        raise ValueError("a process needs at least two states")
    rng = np.random.default_rng(seed)
    envs = [d_env] * (n_states - 1) if isinstance(d_env, int) else list(d_env)
    if len(envs) != n_states - 1:
        raise ValueError(f"need {n_states - 1} environment dims, got {len(envs)}")
    initial = random_density(d_sys, seed=rng)
    channels = [dilation_to_kraus(random_channel(d_sys, d_sys, e, rng)) for e in envs]
    return markov_process(initial, channels)


def _witness_entries(p: MarkovChainProcess, steps: int) -> dict[str, float]:
    if steps == 4:
        entries = dict(qdpi_witnesses(p).entries)
        entries["M4"] = m4_witness(p)
        return entries
    if steps == 6:
        return dict(m6_witnesses(p).entries)
    return dict(m8_witnesses(p).entries)


def _certificates(p: MarkovChainProcess, steps: int) -> dict[str, float]:
    if steps == 4:
        return {"M4": m4_ssa_certificate(p)}
    if steps == 6:
        return m6_ssa_certificates(p)
    return m8_ssa_certificates(p)


def random_markov_verify(steps: int, samples: int, dims: tuple[int, int] = (2, 2),
                         seed: int = 0, certificate_samples: int = 20,
                         tolerance: float = GAP_TOLERANCE) -> dict:
    """Worst-case witness survey over `samples` random Markov processes.

    Sample i is built from seed + i.  The first `certificate_samples`
    processes additionally get their strong-subadditivity certificate
    evaluated; the certificate values are themselves nonnegative sums of
    conditional mutual informations, so their minimum is reported along
    with the worst witness-to-certificate mismatch.
    """
    if steps not in (4, 6, 8):
        raise ValueError(f"steps must be 4, 6 or 8, got {steps}")
    if samples < 1:
        raise ValueError("need at least one sample")
    d_sys, d_env = dims

    def one(i: int) -> tuple[dict[str, float], dict[str, float] | None]:
        p = random_markov_process(steps, seed + i, d_sys, d_env)
        entries = _witness_entries(p, steps)
        certs = _certificates(p, steps) if i < certificate_samples else None
        return entries, certs

    results = parallel_map(one, list(range(samples)))
    minima: dict[str, float] = {}
    cert_min = math.inf
    cert_mismatch = 0.0
    counterexample = None
    for i, (entries, certs) in enumerate(results):
        for name, value in entries.items():
            minima[name] = min(minima.get(name, math.inf), value)
        if counterexample is None and min(entries.values()) < -tolerance:
            counterexample = seed + i
        if certs is not None:
            cert_min = min(cert_min, min(certs.values()))
            cert_mismatch = max(cert_mismatch,
                                max(abs(entries[k] - certs[k]) for k in certs))
    return {
        "steps": steps,
        "samples": samples,
        "seed": seed,
        "witness_minima": minima,
        "ssa_certificate_min": cert_min,
        "certificate_max_mismatch": cert_mismatch,
        "counterexample_seed": counterexample,
    }


def adjoint_identity_check(samples: int = 100, seed: int = 0) -> dict[str, float]:
    """Max deviation of (A x id)(Psi+) = (id x A~)(Psi+) and of unitality
    of A~ over random channels of mixed dimensions."""
    rng = np.random.default_rng(seed)
    id_dev = 0.0
    unital_dev = 0.0
    for i in range(samples):
        d = int(rng.integers(2, 4))
        d_env = int(rng.integers(2, 5))
        ch = dilation_to_kraus(random_channel(d, d, d_env, rng))
        adj = adjoint_channel(ch)
        pair = maximally_entangled(d).density()
        left = apply_to_subsystem(ch, pair, 0)
        right = apply_to_subsystem(adj, pair, 1)
        id_dev = max(id_dev, float(np.abs(left.mat - right.mat).max()))
        one = sum(k @ k.conj().T for k in adj.kraus)
        unital_dev = max(unital_dev, float(np.abs(one - np.eye(d)).max()))
    return {"identity_max_deviation": id_dev, "unitality_max_deviation": unital_dev}


def mi_monotonicity_check(samples: int = 500, seed: int = 0) -> dict[str, float]:
    """Minimum of the conditional and plain mutual-information contraction
    gaps, plus the minimum raw conditional mutual information, over random
    states and channels."""
    rng = np.random.default_rng(seed)
    cqmi_min = math.inf
    mi_min = math.inf
    cmi_min = math.inf
    for _ in range(samples):
        rho3 = DensityMatrix(random_density(8, seed=rng).mat, (2, 2, 2))
        ch = dilation_to_kraus(random_channel(2, 2, int(rng.integers(2, 5)), rng))
        cqmi_min = min(cqmi_min, cqmi_monotonicity_gap(rho3, ch))
        cmi_min = min(cmi_min, conditional_mutual_information(rho3, (0,), (1,), (2,)))
        rho2 = DensityMatrix(random_density(4, seed=rng).mat, (2, 2))
        mi_min = min(mi_min, mi_dpi_gap(rho2, ch))
    return {"cqmi_monotonicity_min": cqmi_min, "mi_monotonicity_min": mi_min,
            "cmi_min": cmi_min}


def classical_cmmi_check(samples: int = 1000, seed: int = 0,
                         n_pairs: int = 2, dim: int = 2) -> dict[str, float]:
    """Minimum classical monogamy gap over random Markov chains.

    Uses the full swap permutation; with n_pairs = 2 this is the classical
    four-variable monogamy combination.
    """
    rng = np.random.default_rng(seed)
    perm = tuple(range(n_pairs, 0, -1))
    worst = math.inf
    for _ in range(samples):
        chain = random_chain(2 * n_pairs, dim, rng)
        worst = min(worst, cmmi_gap(joint_from_chain(chain), perm))
    return {"classical_cmmi_min": worst}
