"""Process tensors: multitime Choi states of a system-environment circuit,
instrument contraction, the Markov factorization test, Choi-state
data-processing gaps, and the interventional monogamy witnesses.

A SystemEnvCircuit is a pure state on (R0, S, E) together with step
unitaries on S (x) E.  Its k-slot process tensor is built by, at each
intermediate time, setting the live system aside as the slot's output
port S_j and feeding in one half of a fresh maximally entangled pair
whose other half becomes the input port R_j; the environment is traced
at the end.  Port order: (R0, S1, R1, S2, R2, ..., S_k).

Contracting the tensor with CP maps at the slots reproduces exactly what
the circuit would output if those maps were applied in line, which is
the defining property checked by the tests.  Interventions enter through
the kernel d * sum_M |M|i><s|M*, the unnormalized input-side Choi of the
map; the factor d cancels the normalization of the inserted pair.

The interventional witnesses (kinds q1, q2, q3) instead purify the
actual reduced state at slot j, retain the purification reference, and
compare entropy combinations across slots; all three coincide for Markov
processes and detect memory in different ways when they differ.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .channels import KrausChannel
from .classical import JointPMF, joint_pmf
from .info import mutual_information, von_neumann
from .linalg import apply_two_site, is_unitary, kron
from .states import DensityMatrix, PureState, density, maximally_entangled, purify
from .witnesses import GAP_TOLERANCE, WitnessReport

__all__ = [
    "SystemEnvCircuit",
    "ProcessTensor",
    "Instrument",
    "system_env_circuit",
    "instrument",
    "dephasing_instrument",
    "build_process_tensor",
    "contract",
    "markov_factorization_gap",
    "port_mutual_information",
    "choi_dpi_witnesses",
    "multitime_coherent_info",
    "mqmmi_witness",
    "fresh_env_circuit",
    "dephased_joint_pmf",
]

# refuse simulations needing more amplitudes than this
MAX_AMPLITUDES = 2 ** 14


@dataclass(frozen=True, eq=False)
class SystemEnvCircuit:
    """Pure (R0, S, E) state evolved by unitaries on S (x) E."""

    initial: PureState
    step_unitaries: tuple[np.ndarray, ...]

    @property
    def d_ref(self) -> int:
        return self.initial.dims[0]

    @property
    def d_sys(self) -> int:
        return self.initial.dims[1]

    @property
    def d_env(self) -> int:
        return self.initial.dims[2]

    @property
    def n_slots(self) -> int:
        return len(self.step_unitaries) + 1


@dataclass(frozen=True, eq=False)
class ProcessTensor:
    """Choi state over ports (R0, S1, R1, ..., S_k)."""

    choi: DensityMatrix
    ports: tuple[str, ...]

    @property
    def n_slots(self) -> int:
        return len(self.ports) // 2

    @property
    def d_sys(self) -> int:
        return self.choi.dims[1]


@dataclass(frozen=True, eq=False)
class Instrument:
    """Complete collection of CP maps; elements are tuples of Kraus operators."""

    elements: tuple[tuple[np.ndarray, ...], ...]


def system_env_circuit(initial: PureState,
                       step_unitaries: Sequence[np.ndarray]) -> SystemEnvCircuit:
    """Validate register structure and unitarity (1e-10) into a circuit."""
    if len(initial.dims) != 3:
        raise ValueError(f"initial state needs registers (R0, S, E), got dims {initial.dims}")
    d_se = initial.dims[1] * initial.dims[2]
    units = tuple(np.asarray(u, dtype=complex) for u in step_unitaries)
    for i, u in enumerate(units):
        if u.shape != (d_se, d_se):
            raise ValueError(f"unitary {i} must be {d_se} x {d_se}, got {u.shape}")
        if not is_unitary(u, 1e-10):
            raise ValueError(f"step operator {i} is not unitary within 1e-10")
    return SystemEnvCircuit(initial, units)


def instrument(elements: Sequence[Sequence[np.ndarray]]) -> Instrument:
    """Validate completeness: the element maps must sum to a TP channel."""
    elems = tuple(tuple(np.asarray(m, dtype=complex) for m in el) for el in elements)
    if not elems or not elems[0]:
        raise ValueError("instrument needs at least one Kraus operator")
    d = elems[0][0].shape[1]
    total = sum(m.conj().T @ m for el in elems for m in el)
    dev = np.abs(total - np.eye(d)).max()
    if dev > 1e-10:
        raise ValueError(f"instrument elements do not sum to a TP map: deviation {dev:.3e}")
    return Instrument(elems)


def dephasing_instrument(d: int) -> Instrument:
    """Rank-one projective measurement onto the computational basis."""
    elems = []
    for i in range(d):
        p = np.zeros((d, d), dtype=complex)
        p[i, i] = 1.0
        elems.append((p,))
    return instrument(elems)


# ---------------------------------------------------------------------------
# building and contracting
# ---------------------------------------------------------------------------

def build_process_tensor(circuit: SystemEnvCircuit, steps: int) -> ProcessTensor:
    """Choi state of the first `steps` time slots of the circuit.

    Needs steps - 1 step unitaries.  The k = 1 tensor is just the initial
    (R0, S) marginal.
    """
    if steps < 1:
        raise ValueError("need at least one time slot")
    if steps - 1 > len(circuit.step_unitaries):
        raise ValueError(
            f"{steps} slots need {steps - 1} step unitaries, "
            f"circuit has {len(circuit.step_unitaries)}")
    d = circuit.d_sys
    t = circuit.initial.vec.reshape(circuit.initial.dims)
    dims = list(circuit.initial.dims)
    pair = maximally_entangled(d).vec.reshape(d, d)
    for j in range(1, steps):
        if math.prod(dims) * d * d > MAX_AMPLITUDES:
            raise ValueError(
                f"slot {j} would need {math.prod(dims) * d * d} amplitudes "
                f"(limit {MAX_AMPLITUDES})")
        # live axis becomes the retained S_j; pair half R_j stays, half feeds on
        t = np.tensordot(t, pair, axes=0)
        t = np.moveaxis(t, -3, -1)
        dims = dims[:-1] + [d, d, dims[-1]]
        vec = apply_two_site(t.reshape(-1), tuple(dims), circuit.step_unitaries[j - 1],
                             (len(dims) - 2, len(dims) - 1))
        t = vec.reshape(dims)
    psi = PureState(t.reshape(-1), tuple(dims))
    choi = psi.reduced(tuple(range(len(dims) - 1)))
    ports = ["R0"]
    for j in range(1, steps):
        ports += [f"S{j}", f"R{j}"]
    ports.append(f"S{steps}")
    return ProcessTensor(choi, tuple(ports))


def _as_kraus_ops(item) -> tuple[np.ndarray, ...]:
    if isinstance(item, KrausChannel):
        return item.kraus
    return tuple(np.asarray(m, dtype=complex) for m in item)


def _intervention_kernel(ops: tuple[np.ndarray, ...], d: int) -> np.ndarray:
    # kernel[s, i, s', i'] = d * sum_M M[i, s] conj(M[i', s'])
    for m in ops:
        if m.shape != (d, d):
            raise ValueError(f"intervention operator must be {d} x {d}, got {m.shape}")
    k = sum(np.einsum("is,ju->siuj", m, m.conj()) for m in ops)
    return d * np.asarray(k)


def _contract_ports(pt: ProcessTensor,
                    slot_ops: dict[int, tuple[np.ndarray, ...]],
                    keep: tuple[int, ...],
                    final_ops: tuple[np.ndarray, ...] | None = None) -> np.ndarray:
    """Einsum core: apply kernels at `slot_ops` slots, trace every port not
    kept, optionally close the final port with sum M†M.  Returns the matrix
    over `keep` (port indices, in port order)."""
    n = len(pt.ports)
    dims = pt.choi.dims
    tensor = pt.choi.mat.reshape(dims + dims)
    ket = list(range(n))
    bra = [n + i for i in range(n)]
    operands = [tensor]
    indices = [ket + bra]
    busy = set(keep)
    for j, ops in slot_ops.items():
        s_ax, r_ax = 2 * j - 1, 2 * j
        kern = _intervention_kernel(ops, pt.d_sys)
        operands.append(kern)
        indices.append([ket[s_ax], ket[r_ax], bra[s_ax], bra[r_ax]])
        busy |= {s_ax, r_ax}
    if final_ops is not None:
        w = sum(m.conj().T @ m for m in final_ops)
        operands.append(np.asarray(w, dtype=complex))
        indices.append([bra[n - 1], ket[n - 1]])
        busy.add(n - 1)
    for p in range(n):
        if p not in busy:
            bra[p] = ket[p]
    indices[0] = ket + bra
    out = [ket[p] for p in keep] + [bra[p] for p in keep]
    args = []
    for op, idx in zip(operands, indices):
        args += [op, idx]
    res = np.einsum(*args, out, optimize=True)
    d_keep = math.prod(dims[p] for p in keep) if keep else 1
    return res.reshape(d_keep, d_keep)


def contract(pt: ProcessTensor, interventions: Sequence) -> DensityMatrix | float:
    """Feed CP maps into the slots of the tensor.

    With one map per intermediate slot (k-1 of them) the result is the
    output state at the final port; with k maps the last one is read as
    the final-port instrument element and the result is the probability
    of the whole sequence.  Maps may be KrausChannel objects or bare
    Kraus-operator sequences (instrument elements need not preserve
    trace).
    """
    k = pt.n_slots
    ops = [_as_kraus_ops(item) for item in interventions]
    if len(ops) == k - 1:
        slot_ops = {j: ops[j - 1] for j in range(1, k)}
        mat = _contract_ports(pt, slot_ops, (len(pt.ports) - 1,))
        tr = np.trace(mat).real
        if abs(tr - 1.0) > 1e-8:
            mat = mat / tr  # conditional state of a trace-decreasing sequence
        return density(mat, (pt.d_sys,))
    if len(ops) == k:
        slot_ops = {j: ops[j - 1] for j in range(1, k)}
        p = _contract_ports(pt, slot_ops, (), final_ops=ops[-1])
        p = complex(p[0, 0]).real
        if not -1e-10 <= p <= 1 + 1e-10:
            raise ValueError(f"contraction gave probability {p!r} outside [0, 1]")
        return p
    raise ValueError(
        f"expected {k - 1} or {k} interventions for a {k}-slot tensor, got {len(ops)}")


def markov_factorization_gap(pt: ProcessTensor) -> float:
    """Max-abs distance between the Choi state and the product of its
    per-step marginals (R0,S1)(R1,S2)...(R_{k-1},S_k); zero iff Markov."""
    k = pt.n_slots
    parts = [pt.choi.reduced((2 * g, 2 * g + 1)).mat for g in range(k)]
    return float(np.abs(pt.choi.mat - kron(*parts)).max())


# ---------------------------------------------------------------------------
# Choi-state data-processing gaps
# ---------------------------------------------------------------------------

def port_mutual_information(pt: ProcessTensor, y: int, x: int,
                            interventions: Sequence | None = None) -> float:
    """I(R_y : S_x) with CPTP maps at the slots strictly before x (default
    identity), the pair (S_y, R_y) left open at slot y, and everything at
    or after slot x traced out."""
    k = pt.n_slots
    if not (1 <= x <= k) or not (1 <= y <= k - 1):
        raise ValueError(f"ports R{y}, S{x} not present in a {k}-slot tensor")
    if interventions is None:
        eye = (np.eye(pt.d_sys, dtype=complex),)
        per_slot = {j: eye for j in range(1, k)}
    else:
        if len(interventions) != k - 1:
            raise ValueError(f"need {k - 1} interventions, got {len(interventions)}")
        per_slot = {j: _as_kraus_ops(interventions[j - 1]) for j in range(1, k)}
    slot_ops = {j: per_slot[j] for j in range(1, x) if j != y}
    r_port = 2 * y
    s_port = 2 * x - 1
    keep = tuple(sorted((r_port, s_port)))
    mat = _contract_ports(pt, slot_ops, keep)
    rho = density(mat, (pt.choi.dims[keep[0]], pt.choi.dims[keep[1]]))
    return mutual_information(rho, (0,), (1,))


# the seven gaps: two adjacent plus one transitive along the R1 row, the
# R2 row gap, the two final-column comparisons, and the R2/R1 column gap
CHOI_DPI_GAPS = (
    ("R1S2-R1S3", (1, 2), (1, 3)),
    ("R1S3-R1S4", (1, 3), (1, 4)),
    ("R1S2-R1S4", (1, 2), (1, 4)),
    ("R2S3-R2S4", (2, 3), (2, 4)),
    ("R2S3-R1S3", (2, 3), (1, 3)),
    ("R3S4-R2S4", (3, 4), (2, 4)),
    ("R2S4-R1S4", (2, 4), (1, 4)),
)


def choi_dpi_witnesses(pt: ProcessTensor, interventions: Sequence | None = None,
                       tolerance: float = GAP_TOLERANCE) -> WitnessReport:
    """The seven port mutual-information gaps of a four-slot tensor.

    All are nonnegative when the underlying process is Markov, for any
    CPTP interventions.
    """
    if pt.n_slots != 4:
        raise ValueError(f"needs a 4-slot tensor, got {pt.n_slots} slots")
    cache: dict[tuple[int, int], float] = {}

    def mi(y: int, x: int) -> float:
        if (y, x) not in cache:
            cache[(y, x)] = port_mutual_information(pt, y, x, interventions)
        return cache[(y, x)]

    entries = {name: mi(*hi) - mi(*lo) for name, hi, lo in CHOI_DPI_GAPS}
    return WitnessReport(entries, tolerance)


# ---------------------------------------------------------------------------
# interventional monogamy witnesses
# ---------------------------------------------------------------------------

def multitime_coherent_info(circuit: SystemEnvCircuit, kind: str, j: int, k: int,
                            purifier: Callable[[DensityMatrix], PureState] = purify,
                            ) -> float:
    """Entropic two-slot quantity with a purification intervention at slot j.

    The circuit runs to slot j; the live system is set aside as S_j, its
    reduced state is purified (by `purifier`, reference register first),
    and the purification's system half is fed forward to slot k.  With the
    global state pure over (R0, S_j, R_j, S_k, E), the kinds are

        q1 = H(S_j, R_j) - H(S_j, R_j, S_k)
        q2 = H(S_k) - H(S_j, R_j, S_k)
        q3 = H(S_j, S_k) - H(S_j, R_j, S_k)

    The value does not depend on which purification is chosen.
    """
    if kind not in ("q1", "q2", "q3"):
        raise ValueError(f"kind must be q1, q2 or q3, got {kind!r}")
    if not (1 <= j < k <= circuit.n_slots):
        raise ValueError(f"need 1 <= j < k <= {circuit.n_slots}, got j={j}, k={k}")
    t = circuit.initial.vec.reshape(circuit.initial.dims)
    dims = list(circuit.initial.dims)
    vec = t.reshape(-1)
    for step in range(j - 1):
        vec = apply_two_site(vec, tuple(dims), circuit.step_unitaries[step],
                             (len(dims) - 2, len(dims) - 1))
    # set the live system aside and splice in the purification of its state
    live = len(dims) - 2
    rho_j = PureState(vec, tuple(dims)).reduced((live,))
    pur = purifier(rho_j)
    if pur.dims[1] != circuit.d_sys:
        raise ValueError("purifier must return (reference, system) registers")
    d_ref = pur.dims[0]
    if math.prod(dims) * d_ref * circuit.d_sys > MAX_AMPLITUDES:
        raise ValueError(f"purification insertion exceeds {MAX_AMPLITUDES} amplitudes")
    t = vec.reshape(dims)
    t = np.tensordot(t, pur.vec.reshape(pur.dims), axes=0)
    t = np.moveaxis(t, -3, -1)  # (.., S_j, E, R_j, S') -> (.., S_j, R_j, S', E)
    dims = dims[:-1] + [d_ref, circuit.d_sys, dims[-1]]
    vec = t.reshape(-1)
    for step in range(j - 1, k - 1):
        vec = apply_two_site(vec, tuple(dims), circuit.step_unitaries[step],
                             (len(dims) - 2, len(dims) - 1))
    psi = PureState(vec, tuple(dims))
    s_j, r_j, s_k = len(dims) - 4, len(dims) - 3, len(dims) - 2
    h_all = von_neumann(psi.reduced((s_j, r_j, s_k)))
    if kind == "q1":
        return von_neumann(psi.reduced((s_j, r_j))) - h_all
    if kind == "q2":
        return von_neumann(psi.reduced((s_k,))) - h_all
    return von_neumann(psi.reduced((s_j, s_k))) - h_all


def mqmmi_witness(circuit: SystemEnvCircuit, kind: str) -> float:
    """Interventional monogamy gap
    I(1;4) + I(2;3) - I(1;3) - I(2;4) of the requested kind; nonnegative
    for every Markov process."""
    if circuit.n_slots < 4:
        raise ValueError("needs a circuit with at least 4 slots")

    def iq(a: int, b: int) -> float:
        return multitime_coherent_info(circuit, kind, a, b)

    return iq(1, 4) + iq(2, 3) - iq(1, 3) - iq(2, 4)


# ---------------------------------------------------------------------------
# Markov circuits and dephasing
# ---------------------------------------------------------------------------

def fresh_env_circuit(initial_rs: PureState, step_unitaries: Sequence[np.ndarray],
                      env_dim: int) -> SystemEnvCircuit:
    """Markov circuit: every step gets its own fresh |0> environment.

    `initial_rs` is the (R0, S) state; each step unitary acts on
    S (x) F_j with dim(F_j) = env_dim and is embedded into the combined
    environment E = F_1 (x) ... (x) F_m.
    """
    if len(initial_rs.dims) != 2:
        raise ValueError(f"initial state needs registers (R0, S), got {initial_rs.dims}")
    d_s = initial_rs.dims[1]
    m = len(step_unitaries)
    d_env = env_dim ** m
    e0 = np.zeros(d_env, dtype=complex)
    e0[0] = 1.0
    vec = np.kron(initial_rs.vec, e0)
    initial = PureState(vec, (initial_rs.dims[0], d_s, d_env))
    dims = [d_s] + [env_dim] * m
    embedded = []
    for jj, u in enumerate(step_unitaries):
        u = np.asarray(u, dtype=complex)
        if u.shape != (d_s * env_dim, d_s * env_dim):
            raise ValueError(
                f"step unitary {jj} must act on dim {d_s * env_dim}, got {u.shape}")
        big = kron(u, np.eye(env_dim ** (m - 1)))
        # big is ordered (S, F_jj, other F's ascending); permute to (S, F_1..F_m)
        current = [0, jj + 1] + [ax for ax in range(1, m + 1) if ax != jj + 1]
        perm = [current.index(ax) for ax in range(m + 1)]
        big = big.reshape(dims + dims).transpose(perm + [p + m + 1 for p in perm])
        embedded.append(big.reshape(d_s * d_env, d_s * d_env))
    return system_env_circuit(initial, embedded)


def dephased_joint_pmf(pt: ProcessTensor) -> JointPMF:
    """Outcome distribution of computational-basis rank-one measurements at
    every slot and the final port; classical and Markov whenever the
    underlying process is Markov."""
    d = pt.d_sys
    k = pt.n_slots
    projs = [m[0] for m in dephasing_instrument(d).elements]
    probs = np.zeros((d,) * k)
    for outcome in itertools.product(range(d), repeat=k):
        seq = [(projs[i],) for i in outcome]
        probs[outcome] = contract(pt, seq)
    return joint_pmf(probs)
