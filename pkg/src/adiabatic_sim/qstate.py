"""Complex state vectors over qubit registers and the fast Walsh-Hadamard transform.

A state lives on two tensored registers: register A with ``num_qubits_a``
qubits (the input register) and register B with ``num_qubits_b`` qubits (the
output register).  Amplitudes are stored densely, indexed by

    index = w * 2**num_qubits_b + y

where ``w`` labels the A basis state and ``y`` the B basis state; bit ``k`` of
an integer label is the value of qubit ``k`` of that register.  |0> is the
spin-up (+z) state, so sigma_z |0> = +|0>.

Everything here is a pure function on immutable inputs; no operation writes
to its arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, DomainError, ShapeError

# Dense states above this many total qubits are refused to bound memory.
DEFAULT_QUBIT_CAP = 26

SQRT_HALF = 1.0 / math.sqrt(2.0)

IDENTITY_2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) * SQRT_HALF


def check_capacity(total_qubits: int, cap: int = DEFAULT_QUBIT_CAP) -> None:
    if total_qubits > cap:
        raise CapacityError(
            f"{total_qubits} qubits exceeds the dense-state cap of {cap}"
        )


def bit(value: int, k: int) -> int:
    """Bit k of an integer basis label."""
    return (value >> k) & 1


@dataclass(frozen=True)
class StateVector:
    """Dense amplitude vector over an (A, B) register pair.

    ``amps`` has length 2**(num_qubits_a + num_qubits_b); either register may
    be empty.  Amplitudes must be finite; normalization is the caller's
    responsibility (operator application legitimately produces unnormalized
    vectors).
    """

    num_qubits_a: int
    num_qubits_b: int
    amps: np.ndarray

    def __post_init__(self) -> None:
        if self.num_qubits_a < 0 or self.num_qubits_b < 0:
            raise DomainError("register sizes must be non-negative")
        amps = np.ascontiguousarray(self.amps, dtype=np.complex128)
        if amps.shape != (1 << self.num_qubits,):
            raise ShapeError(
                f"expected {1 << self.num_qubits} amplitudes, got {amps.shape}"
            )
        if not np.isfinite(amps.view(np.float64)).all():
            raise DomainError("amplitudes must be finite")
        object.__setattr__(self, "amps", amps)

    @property
    def num_qubits(self) -> int:
        return self.num_qubits_a + self.num_qubits_b

    @property
    def dim(self) -> int:
        return 1 << self.num_qubits

    def norm_sq(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def as_matrix(self) -> np.ndarray:
        """Amplitudes reshaped to (2**n_a, 2**n_b); A indexes rows."""
        return self.amps.reshape(1 << self.num_qubits_a, 1 << self.num_qubits_b)


def basis_state(
    num_qubits_a: int, num_qubits_b: int, index: int, cap: int = DEFAULT_QUBIT_CAP
) -> StateVector:
    """Computational-basis state |index> on the combined register."""
    total = num_qubits_a + num_qubits_b
    check_capacity(total, cap)
    if not 0 <= index < (1 << total):
        raise DomainError(f"basis index {index} out of range for {total} qubits")
    amps = np.zeros(1 << total, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(num_qubits_a, num_qubits_b, amps)


def plus_state(
    num_qubits_a: int, num_qubits_b: int, cap: int = DEFAULT_QUBIT_CAP
) -> StateVector:
    """|+>^(n_a) (x) |+>^(n_b): the uniform superposition with all-positive amplitudes."""
    total = num_qubits_a + num_qubits_b
    check_capacity(total, cap)
    dim = 1 << total
    amps = np.full(dim, 1.0 / math.sqrt(dim), dtype=np.complex128)
    return StateVector(num_qubits_a, num_qubits_b, amps)


def random_state(
    num_qubits_a: int, num_qubits_b: int, seed: int, cap: int = DEFAULT_QUBIT_CAP
) -> StateVector:
    """Haar-ish normalized random state (Gaussian amplitudes), for tests."""
    total = num_qubits_a + num_qubits_b
    check_capacity(total, cap)
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=1 << total) + 1j * rng.normal(size=1 << total)
    amps /= np.linalg.norm(amps)
    return StateVector(num_qubits_a, num_qubits_b, amps)


def tensor(u: StateVector, v: StateVector, cap: int = DEFAULT_QUBIT_CAP) -> StateVector:
    """Tensor product u (x) v.

    The first factor becomes register A of the result and the second register
    B, so the combined index is u_index * v.dim + v_index.
    """
    total = u.num_qubits + v.num_qubits
    check_capacity(total, cap)
    return StateVector(u.num_qubits, v.num_qubits, np.kron(u.amps, v.amps))


def inner(u: StateVector, v: StateVector) -> complex:
    """<u|v>, conjugate-linear in the first argument."""
    if u.dim != v.dim:
        raise ShapeError(f"dimension mismatch: {u.dim} vs {v.dim}")
    return complex(np.vdot(u.amps, v.amps))


def fidelity(u: StateVector, v: StateVector) -> float:
    """|<u|v>|^2."""
    return abs(inner(u, v)) ** 2


def _fwht_inplace(block: np.ndarray) -> None:
    """Normalized Walsh-Hadamard butterfly along the last axis (length 2**m).

    O(m * 2**m) amplitude operations; each level pairs indices differing in
    one bit.
    """
    m_dim = block.shape[-1]
    h = 1
    while h < m_dim:
        view = block.reshape(block.shape[:-1] + (m_dim // (2 * h), 2, h))
        top = view[..., 0, :].copy()
        bot = view[..., 1, :].copy()
        view[..., 0, :] = top + bot
        view[..., 1, :] = top - bot
        h *= 2
    block *= m_dim ** -0.5


def fwht_subsystem(psi: StateVector, subsystem: str) -> StateVector:
    """Apply the normalized Hadamard transform to every qubit of one register.

    ``subsystem`` is "A" or "B".  Applying twice returns the input (the
    transform is an involution).
    """
    if subsystem not in ("A", "B"):
        raise DomainError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    n_sub = psi.num_qubits_a if subsystem == "A" else psi.num_qubits_b
    if n_sub == 0:
        return StateVector(psi.num_qubits_a, psi.num_qubits_b, psi.amps.copy())
    mat = psi.as_matrix().copy()
    if subsystem == "A":
        mat = np.ascontiguousarray(mat.T)
        _fwht_inplace(mat)
        mat = mat.T
    else:
        _fwht_inplace(mat)
    return StateVector(psi.num_qubits_a, psi.num_qubits_b, mat.reshape(-1))


def apply(op: np.ndarray, psi: StateVector) -> StateVector:
    """Matrix-vector product op @ psi; no normalization is applied."""
    op = np.asarray(op)
    if op.shape != (psi.dim, psi.dim):
        raise ShapeError(f"operator shape {op.shape} does not match dim {psi.dim}")
    return StateVector(psi.num_qubits_a, psi.num_qubits_b, op @ psi.amps)
