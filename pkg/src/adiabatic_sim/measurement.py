"""Projective measurement, collapse, and the readout procedures of both algorithms.

z-basis measurement samples a register's marginal distribution and collapses
to the renormalized conditional state.  x-basis measurement is the Hadamard
sandwich: rotate the register with the Walsh-Hadamard transform, measure in
z, rotate back.  x outcomes are labeled with bit 0 <-> |+> and bit 1 <-> |->.

Randomness flows through ``RandomSource``, a counter-based (Philox) generator:
identical (seed, stream) plus an identical sequence of draw calls reproduces
identical outcomes.  Samplers draw in a fixed documented order so whole runs
replay bit-for-bit; parallel shots must use streams derived per shot.

``simon_sample_factored`` samples the exact post-measurement x distribution
without materializing the 2^(2n-1)-amplitude state: the drawn B outcome y
weights each input branch w by prod_k phi_{g_k(w)}[y_k], which depends on w
only through bit-agreement counts between y and g(w).  Draw order per shot:
one uniform for the branch label, one uniform per output bit (ascending),
one uniform for the final x pick.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import CapacityError, DomainError, ResampleError
from .oracles import SimonOracle, simon_eval, simon_eval_all
from .qstate import StateVector, fwht_subsystem, _fwht_inplace

# The factored sampler materializes only the 2^n input register.
FACTORED_SAMPLER_CAP = 24


class RandomSource:
    """Seeded counter-based random stream (numpy Philox under the hood).

    ``derive(index)`` creates an independent stream for parallel shots; the
    draw counter is informational, for run-record provenance.
    """

    def __init__(self, seed: int, stream: int = 0):
        self.seed = int(seed)
        self.stream = int(stream)
        key = np.array(
            [self.seed & 0xFFFFFFFFFFFFFFFF, self.stream & 0xFFFFFFFFFFFFFFFF],
            dtype=np.uint64,
        )
        self._gen = np.random.Generator(np.random.Philox(key=key))
        self.draws = 0

    def derive(self, index: int) -> "RandomSource":
        return RandomSource(self.seed, self.stream + 1 + index)

    def uniform(self) -> float:
        self.draws += 1
        return float(self._gen.random())

    def randrange(self, bound: int) -> int:
        return min(int(self.uniform() * bound), bound - 1)

    def sample_index(self, probs: np.ndarray) -> int:
        """Draw an index with the given (unnormalized) probability weights."""
        cum = np.cumsum(probs)
        total = cum[-1]
        if not total > 0:
            raise ResampleError("measurement weights sum to zero")
        idx = int(np.searchsorted(cum, self.uniform() * total, side="right"))
        idx = min(idx, len(probs) - 1)
        if not probs[idx] > 0:
            raise ResampleError("sampled a zero-probability branch")
        return idx


@dataclass(frozen=True)
class MeasurementRecord:
    basis: str
    subsystem: str
    outcome: int
    post_state: StateVector


def measure_z(psi: StateVector, subsystem: str, rng: RandomSource) -> MeasurementRecord:
    """Projective z-basis measurement of one whole register."""
    if subsystem not in ("A", "B"):
        raise DomainError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    mat = psi.as_matrix()
    axis = 1 if subsystem == "A" else 0
    probs = np.abs(mat) ** 2
    marginal = probs.sum(axis=axis)
    outcome = rng.sample_index(marginal)
    post = np.zeros_like(mat)
    if subsystem == "A":
        post[outcome, :] = mat[outcome, :] / math.sqrt(marginal[outcome])
    else:
        post[:, outcome] = mat[:, outcome] / math.sqrt(marginal[outcome])
    return MeasurementRecord(
        basis="z",
        subsystem=subsystem,
        outcome=outcome,
        post_state=StateVector(psi.num_qubits_a, psi.num_qubits_b, post.reshape(-1)),
    )


def measure_x(psi: StateVector, subsystem: str, rng: RandomSource) -> MeasurementRecord:
    """Projective x-basis measurement: Hadamard, z-measure, Hadamard back."""
    rotated = fwht_subsystem(psi, subsystem)
    record = measure_z(rotated, subsystem, rng)
    post = fwht_subsystem(record.post_state, subsystem)
    return MeasurementRecord(
        basis="x", subsystem=subsystem, outcome=record.outcome, post_state=post
    )


@dataclass(frozen=True)
class BvReadout:
    restart: bool
    a_candidate: Optional[int] = None


def bv_readout(final: StateVector, rng: RandomSource) -> BvReadout:
    """BV readout: x-measure the output qubit, then the input register.

    Outcome |+> on the output qubit carries no mask information, so the
    caller must restart.  Outcome |-> leaves the input register in a product
    of x eigenstates whose orientations spell out the mask bits.
    """
    output = measure_x(final, "B", rng)
    if output.outcome == 0:
        return BvReadout(restart=True, a_candidate=None)
    inputs = measure_x(output.post_state, "A", rng)
    return BvReadout(restart=False, a_candidate=inputs.outcome)


def simon_sample(final: StateVector, rng: RandomSource) -> int:
    """Simon readout: z-measure the output register, then x-measure the input.

    The returned x outcome is orthogonal (mod 2) to the hidden mask.
    """
    output = measure_z(final, "B", rng)
    inputs = measure_x(output.post_state, "A", rng)
    return inputs.outcome


def _branch_weights(
    oracle: SimonOracle, phi0: np.ndarray, phi1: np.ndarray, y: int
) -> np.ndarray:
    """Unnormalized input-branch amplitudes conditioned on output outcome y.

    weight(w) = prod_k phi_{g_k(w)}[y_k]; grouping the factors by the four
    (g_k, y_k) bit combinations reduces each branch to popcounts.
    """
    if oracle.n > FACTORED_SAMPLER_CAP:
        raise CapacityError(
            f"factored sampler materializes 2^{oracle.n} branch weights; "
            f"cap is n <= {FACTORED_SAMPLER_CAP}"
        )
    m = oracle.n - 1
    g = np.asarray(simon_eval_all(oracle, cap=FACTORED_SAMPLER_CAP))
    pop_g = np.bitwise_count(g)
    c11 = np.bitwise_count(g & y)
    c10 = int(y).bit_count() - c11           # g_k=0, y_k=1
    c01 = pop_g - c11                        # g_k=1, y_k=0
    c00 = m - c11 - c10 - c01
    phi0 = np.asarray(phi0, dtype=np.complex128)
    phi1 = np.asarray(phi1, dtype=np.complex128)
    return (
        np.power(phi0[0], c00)
        * np.power(phi1[0], c01)
        * np.power(phi0[1], c10)
        * np.power(phi1[1], c11)
    )


def simon_factored_x_probs(
    oracle: SimonOracle, phi0: np.ndarray, phi1: np.ndarray, y: int
) -> np.ndarray:
    """Exact x-outcome distribution of the input register given output y."""
    alpha = _branch_weights(oracle, phi0, phi1, y)
    norm = np.linalg.norm(alpha)
    if not norm > 0:
        raise ResampleError("conditional branch weights underflowed to zero")
    alpha = (alpha / norm).reshape(1, -1)
    _fwht_inplace(alpha)
    return np.abs(alpha.reshape(-1)) ** 2


def simon_sample_factored(
    oracle: SimonOracle, phi0: np.ndarray, phi1: np.ndarray, rng: RandomSource
) -> int:
    """Sample one Simon readout from branch vectors alone, O(n 2^n) per shot.

    Exactly reproduces the distribution of ``simon_sample`` on the assembled
    state: a uniform branch pick plus per-qubit output draws realize the
    correct output marginal, and the conditional x distribution is computed
    in closed form.
    """
    n = oracle.n
    w_star = rng.randrange(1 << n)
    g_star = simon_eval(oracle, w_star)
    phi0 = np.asarray(phi0, dtype=np.complex128)
    phi1 = np.asarray(phi1, dtype=np.complex128)
    y = 0
    for k in range(n - 1):
        phi = phi1 if (g_star >> k) & 1 else phi0
        p1 = abs(phi[1]) ** 2 / (abs(phi[0]) ** 2 + abs(phi[1]) ** 2)
        if rng.uniform() < p1:
            y |= 1 << k
    probs = simon_factored_x_probs(oracle, phi0, phi1, y)
    return rng.sample_index(probs)
