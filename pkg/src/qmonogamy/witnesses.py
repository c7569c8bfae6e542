"""Inequality witnesses for stepwise quantum processes.

A process here is an initial state pushed through a list of channels,
state i+1 = L_i(state i).  Writing Ic(r:s) for the coherent information
of state r through the composite map that carries it to state s, the
witnesses are:

* data-processing gaps DP1..DP9, differences Ic(a:b) - Ic(c:d) that are
  nonnegative for every process (DP1..DP4, DP6..DP8) or for which no
  violation is known (DP5, DP9);
* monogamy combinations M4, M6a/b, M8a..g: for 2n states, the sum of
  coherent informations across nested pairs (1:2n), (2:2n-1), ... upper
  bounds the sum across certain permuted pairings.

Each monogamy witness equals a sum of conditional mutual informations of
environment registers on a purified circuit of the process, which is the
strong-subadditivity certificate of the inequality; the certificate
functions compute that sum independently so the identity can be checked
numerically.  The purified circuit replaces each channel by an isometry
into a fresh environment register, keeping the global state pure over
(R, E_1, ..., E_m, S).

All witnesses are reported as plain gap values; a WitnessReport flags
entries below -tolerance (default 1e-9) as violations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import KrausChannel, apply, apply_to_subsystem, kraus_to_isometry
from .info import (
    chain_coherent_information,
    conditional_mutual_information,
    mutual_information,
    von_neumann,
)
from .states import DensityMatrix, PureState, purify

__all__ = [
    "GAP_TOLERANCE",
    "MarkovChainProcess",
    "WitnessReport",
    "markov_process",
    "qdpi_witnesses",
    "m4_witness",
    "extra_dpi_witnesses",
    "m6_witnesses",
    "m8_witnesses",
    "monogamy_conjecture_gap",
    "purified_circuit_state",
    "m4_ssa_certificate",
    "m6_ssa_certificates",
    "m8_ssa_certificates",
    "dp5_conditional_entropy",
    "cqmi_monotonicity_gap",
    "mi_dpi_gap",
]

GAP_TOLERANCE = 1e-9

# purified circuits refuse to allocate more amplitudes than this
MAX_CIRCUIT_DIM = 2 ** 14


@dataclass(frozen=True, eq=False)
class MarkovChainProcess:
    """Initial state plus the channel list that generates the later states."""

    initial: DensityMatrix
    channels: tuple[KrausChannel, ...]

    @property
    def n_states(self) -> int:
        return len(self.channels) + 1

    def state(self, i: int) -> DensityMatrix:
        """The i-th state of the process, 1-based."""
        if not 1 <= i <= self.n_states:
            raise ValueError(f"state index {i} outside 1..{self.n_states}")
        rho = self.initial
        for ch in self.channels[: i - 1]:
            rho = apply(ch, rho)
        return rho

    def coherent_info(self, r: int, s: int) -> float:
        """Ic(r:s), the coherent information from state r to state s."""
        return chain_coherent_information(self.initial, list(self.channels), r, s)


def markov_process(initial: DensityMatrix,
                   channels: list[KrausChannel] | tuple[KrausChannel, ...],
                   ) -> MarkovChainProcess:
    """Validate adjacent dimensions and build a process."""
    channels = tuple(channels)
    if not channels:
        raise ValueError("a process needs at least one channel")
    if len(initial.dims) != 1:
        initial = DensityMatrix(initial.mat, (initial.dim,))
    d = initial.dim
    for i, ch in enumerate(channels):
        if ch.d_in != d:
            raise ValueError(f"channel {i} expects dimension {ch.d_in}, chain carries {d}")
        d = ch.d_out
    return MarkovChainProcess(initial, channels)


@dataclass(frozen=True)
class WitnessReport:
    """Named gap values with a violation threshold."""

    entries: dict[str, float]
    tolerance: float = GAP_TOLERANCE

    @property
    def min_value(self) -> float:
        return min(self.entries.values())

    @property
    def violations(self) -> dict[str, float]:
        return {k: v for k, v in self.entries.items() if v < -self.tolerance}

    @property
    def passed(self) -> bool:
        return not self.violations


def _require_states(p: MarkovChainProcess, n: int, what: str) -> None:
    if p.n_states < n:
        raise ValueError(f"{what} needs at least {n} states, process has {p.n_states}")


# ---------------------------------------------------------------------------
# four-state witnesses
# ---------------------------------------------------------------------------

def qdpi_witnesses(p: MarkovChainProcess, tolerance: float = GAP_TOLERANCE) -> WitnessReport:
    """The four data-processing gaps of a four-state process.

    DP1 = Ic(1:2) - Ic(1:3)    DP2 = Ic(1:2) - Ic(1:4)
    DP3 = Ic(1:3) - Ic(1:4)    DP4 = Ic(2:3) - Ic(2:4)

    All four are nonnegative for every process.
    """
    _require_states(p, 4, "qdpi_witnesses")
    ic = p.coherent_info
    i12, i13, i14 = ic(1, 2), ic(1, 3), ic(1, 4)
    i23, i24 = ic(2, 3), ic(2, 4)
    entries = {
        "DP1": i12 - i13,
        "DP2": i12 - i14,
        "DP3": i13 - i14,
        "DP4": i23 - i24,
    }
    return WitnessReport(entries, tolerance)


def m4_witness(p: MarkovChainProcess) -> float:
    """Four-state monogamy gap Ic(1:4) + Ic(2:3) - Ic(1:3) - Ic(2:4) >= 0."""
    _require_states(p, 4, "m4_witness")
    ic = p.coherent_info
    return ic(1, 4) + ic(2, 3) - ic(1, 3) - ic(2, 4)


def extra_dpi_witnesses(p: MarkovChainProcess,
                        tolerance: float = GAP_TOLERANCE) -> WitnessReport:
    """Candidate gap values whose sign is not fixed by the proven inequalities.

    DP5 = Ic(2:3) - Ic(1:3)    DP6 = Ic(2:3) - Ic(1:4)
    DP7 = Ic(2:4) - Ic(1:4)    DP8 = Ic(3:4) - Ic(1:4)
    DP9 = Ic(3:4) - Ic(2:4)

    Unlike the proven gaps, which fix the starting state and extend the
    segment, each of these compares segments with different starting
    states, so a negative value is not a non-Markovianity witness: random
    Markov processes do violate some of them (DP7 reaches -0.23 on a
    seeded qubit example).  The report records the raw values; callers
    decide what to make of the signs.

    A three-state process yields DP5 only.
    """
    _require_states(p, 3, "extra_dpi_witnesses")
    ic = p.coherent_info
    entries = {"DP5": ic(2, 3) - ic(1, 3)}
    if p.n_states >= 4:
        i14 = ic(1, 4)
        entries["DP6"] = ic(2, 3) - i14
        entries["DP7"] = ic(2, 4) - i14
        entries["DP8"] = ic(3, 4) - i14
        entries["DP9"] = ic(3, 4) - ic(2, 4)
    return WitnessReport(entries, tolerance)


# ---------------------------------------------------------------------------
# six- and eight-state monogamy
# ---------------------------------------------------------------------------

# permuted pairings (i, f(i)) whose Ic sum is upper bounded by the nested sum
M6_PAIRINGS = {
    "M6a": ((1, 4), (2, 6), (3, 5)),
    "M6b": ((1, 5), (2, 4), (3, 6)),
}

M8_PAIRINGS = {
    "M8a": ((1, 5), (2, 8), (3, 7), (4, 6)),
    "M8b": ((1, 7), (2, 5), (3, 8), (4, 6)),
    "M8c": ((1, 6), (2, 8), (3, 5), (4, 7)),
    "M8d": ((1, 5), (2, 6), (3, 8), (4, 7)),
    "M8e": ((1, 7), (2, 6), (3, 5), (4, 8)),
    "M8f": ((1, 6), (2, 5), (3, 7), (4, 8)),
    "M8g": ((1, 5), (2, 6), (3, 7), (4, 8)),
}


def _monogamy_entries(p: MarkovChainProcess, n: int,
                      pairings: dict[str, tuple[tuple[int, int], ...]],
                      ) -> dict[str, float]:
    # nested pairs (i, 2n+1-i); Ic values cached across the pairings
    cache: dict[tuple[int, int], float] = {}

    def ic(r: int, s: int) -> float:
        if (r, s) not in cache:
            cache[(r, s)] = p.coherent_info(r, s)
        return cache[(r, s)]

    lhs = sum(ic(i, 2 * n + 1 - i) for i in range(1, n + 1))
    return {name: lhs - sum(ic(r, s) for r, s in pairs)
            for name, pairs in pairings.items()}


def m6_witnesses(p: MarkovChainProcess, tolerance: float = GAP_TOLERANCE) -> WitnessReport:
    """Six-state monogamy gaps; both entries are nonnegative for every process.

    LHS = Ic(1:6) + Ic(2:5) + Ic(3:4), minus
    M6a: Ic(1:4) + Ic(2:6) + Ic(3:5)
    M6b: Ic(1:5) + Ic(2:4) + Ic(3:6)
    """
    _require_states(p, 6, "m6_witnesses")
    return WitnessReport(_monogamy_entries(p, 3, M6_PAIRINGS), tolerance)


def m8_witnesses(p: MarkovChainProcess, tolerance: float = GAP_TOLERANCE) -> WitnessReport:
    """Eight-state monogamy gaps M8a..M8g, each nonnegative for every process.

    LHS = Ic(1:8) + Ic(2:7) + Ic(3:6) + Ic(4:5) minus the permuted pairing
    named in M8_PAIRINGS.
    """
    _require_states(p, 8, "m8_witnesses")
    return WitnessReport(_monogamy_entries(p, 4, M8_PAIRINGS), tolerance)


def monogamy_conjecture_gap(p: MarkovChainProcess, perm: tuple[int, ...]) -> float:
    """General permutation gap over a 2n-state process.

    The process is read as a chain rho_n -> ... -> rho_1 -> sigma_1 -> ...
    -> sigma_n, i.e. rho_i is state n+1-i and sigma_j is state n+j.  The
    gap is sum_i Ic(rho_i : sigma_i) - sum_i Ic(rho_i : sigma_perm[i]);
    conjectured nonnegative for every permutation, proven for the n=2 swap
    and the pairings listed in M6_PAIRINGS / M8_PAIRINGS.
    """
    if p.n_states % 2:
        raise ValueError(f"needs an even number of states, got {p.n_states}")
    n = p.n_states // 2
    if n > 5:
        raise ValueError(f"n={n} exceeds the supported range (n <= 5)")
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"perm must rearrange 1..{n}, got {perm}")
    ic = p.coherent_info
    diag = sum(ic(n + 1 - i, n + i) for i in range(1, n + 1))
    off = sum(ic(n + 1 - i, n + perm[i - 1]) for i in range(1, n + 1))
    return diag - off


# ---------------------------------------------------------------------------
# purified circuit and strong-subadditivity certificates
# ---------------------------------------------------------------------------

def purified_circuit_state(p: MarkovChainProcess) -> PureState:
    """Pure global state of the process with every channel dilated.

    The initial state is purified by a reference R, then each channel is
    replaced by its isometry into a fresh environment register.  Register
    order of the result: (R, E_1, ..., E_m, S) with m = len(channels);
    the environment dimension of E_j is the Kraus count of channel j.
    """
    rho = p.initial
    if len(rho.dims) != 1:
        rho = DensityMatrix(rho.mat, (rho.dim,))
    psi = purify(rho)
    t = psi.vec.reshape(psi.dims)
    dims = list(psi.dims)
    for ch in p.channels:
        n_env = len(ch.kraus)
        total = math.prod(dims) // dims[-1] * ch.d_out * n_env
        if total > MAX_CIRCUIT_DIM:
            raise ValueError(
                f"purified circuit would need {total} amplitudes "
                f"(limit {MAX_CIRCUIT_DIM})")
        v = kraus_to_isometry(ch).reshape(ch.d_out, n_env, ch.d_in)
        t = np.tensordot(v, t, axes=[[2], [t.ndim - 1]])
        # tensordot leaves (S', E) in front; park E before the live system
        t = np.moveaxis(t, [0, 1], [t.ndim - 1, t.ndim - 2])
        dims = dims[:-1] + [n_env, ch.d_out]
    return PureState(t.reshape(-1), tuple(dims))


def _env_cmi(psi: PureState, a: tuple[int, ...], b: tuple[int, ...],
             c: tuple[int, ...]) -> float:
    # register indices name environments 1..m directly (R sits at axis 0)
    rho = psi  # PureState.reduced contracts from the vector
    ha_c = von_neumann(rho.reduced(a + c))
    hb_c = von_neumann(rho.reduced(b + c))
    habc = von_neumann(rho.reduced(a + b + c))
    hc = von_neumann(rho.reduced(c)) if c else 0.0
    return ha_c + hb_c - habc - hc


def m4_ssa_certificate(p: MarkovChainProcess) -> float:
    """I(E1:E3|E2) on the purified circuit; equals the M4 gap."""
    _require_states(p, 4, "m4_ssa_certificate")
    psi = purified_circuit_state(_truncated(p, 3))
    return _env_cmi(psi, (1,), (3,), (2,))


def m6_ssa_certificates(p: MarkovChainProcess) -> dict[str, float]:
    """Certificate sums matching m6_witnesses entry for entry.

    M6a = I(E1:E5|E2 E3 E4) + I(E1 E2:E4|E3)
    M6b = I(E1 E2:E5|E3 E4) + I(E2:E4|E3)

    Both are exact identities for the corresponding gap, checked to
    machine precision on random processes.
    """
    _require_states(p, 6, "m6_ssa_certificates")
    psi = purified_circuit_state(_truncated(p, 5))
    return {
        "M6a": _env_cmi(psi, (1,), (5,), (2, 3, 4)) + _env_cmi(psi, (1, 2), (4,), (3,)),
        "M6b": _env_cmi(psi, (1, 2), (5,), (3, 4)) + _env_cmi(psi, (2,), (4,), (3,)),
    }


def m8_ssa_certificates(p: MarkovChainProcess) -> dict[str, float]:
    """Certificate sums matching m8_witnesses entry for entry."""
    _require_states(p, 8, "m8_ssa_certificates")
    psi = purified_circuit_state(_truncated(p, 7))

    def cmi(a, b, c):
        return _env_cmi(psi, a, b, c)

    outer = cmi((1,), (7,), (2, 3, 4, 5, 6))
    return {
        "M8a": outer + cmi((1, 2), (6,), (3, 4, 5)) + cmi((1, 2, 3), (5,), (4,)),
        "M8b": outer + cmi((2,), (6, 7), (3, 4, 5)) + cmi((2, 3), (5,), (4,)),
        "M8c": outer + cmi((1, 2), (6,), (3, 4, 5)) + cmi((3,), (5, 6), (4,)),
        "M8d": outer + cmi((2,), (6, 7), (3, 4, 5)) + cmi((1, 2, 3), (5, 6), (4,)),
        "M8e": outer + cmi((2,), (6, 7), (3, 4, 5)) + cmi((3,), (5, 6, 7), (4,)),
        "M8f": outer + cmi((1, 2), (6,), (3, 4, 5)) + cmi((2, 3), (5, 6, 7), (4,)),
        "M8g": outer + cmi((1, 2, 3), (5, 6), (4,)) + cmi((2,), (6, 7), (3, 4, 5))
        + cmi((3,), (7,), (4, 5, 6)),
    }


def dp5_conditional_entropy(p: MarkovChainProcess) -> float:
    """H(E1|E2) on the purified circuit of the first two channels.

    Equals the DP5 gap Ic(2:3) - Ic(1:3); nonnegativity of this
    conditional entropy is exactly what a DP5 violation would refute.
    """
    _require_states(p, 3, "dp5_conditional_entropy")
    psi = purified_circuit_state(_truncated(p, 2))
    return von_neumann(psi.reduced((1, 2))) - von_neumann(psi.reduced((2,)))


def _truncated(p: MarkovChainProcess, n_channels: int) -> MarkovChainProcess:
    if len(p.channels) == n_channels:
        return p
    return MarkovChainProcess(p.initial, p.channels[:n_channels])


# ---------------------------------------------------------------------------
# conditional mutual information monotonicity
# ---------------------------------------------------------------------------

def cqmi_monotonicity_gap(rho_abc: DensityMatrix, ch: KrausChannel) -> float:
    """I(A:B|C) - I(A:D|C) >= 0 for a channel B -> D on a tripartite state."""
    if len(rho_abc.dims) != 3:
        raise ValueError(f"expected three subsystems, got dims {rho_abc.dims}")
    before = conditional_mutual_information(rho_abc, (0,), (1,), (2,))
    rho_adc = apply_to_subsystem(ch, rho_abc, 1)
    after = conditional_mutual_information(rho_adc, (0,), (1,), (2,))
    return before - after


def mi_dpi_gap(rho_ab: DensityMatrix, ch: KrausChannel) -> float:
    """I(A:B) - I(A:D) >= 0 for a channel B -> D on a bipartite state."""
    if len(rho_ab.dims) != 2:
        raise ValueError(f"expected two subsystems, got dims {rho_ab.dims}")
    before = mutual_information(rho_ab, (0,), (1,))
    rho_ad = apply_to_subsystem(ch, rho_ab, 1)
    after = mutual_information(rho_ad, (0,), (1,))
    return before - after
