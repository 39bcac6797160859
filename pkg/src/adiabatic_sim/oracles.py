"""Black-box oracles: the Bernstein-Vazirani parity function and Simon's 2-to-1 function.

The BV oracle is f(w) = w . a mod 2 (bitwise dot product with a hidden mask).
The Simon oracle g maps n-bit inputs onto (n-1)-bit outputs and is constant
exactly on the cosets {w, w xor a} of a hidden nonzero mask a.

Construction of g: let j be the lowest set bit of a.  Every coset contains
exactly one representative whose bit j is clear; deleting bit j from that
representative is a bijection onto {0,1}^(n-1).  An optional seeded
permutation of the output labels ("scramble") hides this canonical structure
from anything that might accidentally exploit it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import CapacityError, DomainError, PromiseError

# Exhaustive table materialization / promise checks are capped here.
TABLE_CAP_QUBITS = 20
# Tables are built eagerly below this size (cheap, speeds up hot loops).
AUTO_TABLE_QUBITS = 14


@dataclass(frozen=True)
class BvMask:
    """Hidden n-bit mask a of the Bernstein-Vazirani function (a = 0 allowed)."""

    n: int
    a: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError("BV mask needs at least one bit")
        if not 0 <= self.a < (1 << self.n):
            raise DomainError(f"mask {self.a} out of range for {self.n} bits")


def bv_eval(mask: BvMask, w: int) -> int:
    """f(w): parity of the bitwise AND of w with the hidden mask."""
    if not 0 <= w < (1 << mask.n):
        raise DomainError(f"input {w} out of range for {mask.n} bits")
    return (w & mask.a).bit_count() & 1


def hamming(y: int, z: int) -> int:
    """Number of differing bits between y and z."""
    return (y ^ z).bit_count()


@dataclass(frozen=True)
class SimonOracle:
    """Black box g with g(w) == g(y) iff w == y or w xor y == a.

    ``scramble`` is an optional permutation of the 2**(n-1) output labels;
    ``table`` an optional materialized map w -> g(w).  Both are None for
    large n, in which case evaluation runs through the O(1) canonical rule.
    """

    n: int
    a: int
    pivot_bit: int
    scramble_seed: Optional[int] = None
    scramble: Optional[np.ndarray] = None
    table: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        if self.n < 2:
            raise DomainError("Simon oracle needs at least two bits")
        if not 0 < self.a < (1 << self.n):
            raise PromiseError(
                "the xor-mask must be a positive n-bit integer; a 2-to-1 map "
                "onto (n-1)-bit outputs cannot exist otherwise"
            )


def _canonical_g(n: int, a: int, pivot: int, w):
    """g before scrambling: drop the pivot bit from the coset representative.

    Works elementwise on ints or integer arrays.
    """
    pivot_set = (w >> pivot) & 1
    rep = np.where(pivot_set == 1, w ^ a, w) if isinstance(w, np.ndarray) else (w ^ a if pivot_set else w)
    low = rep & ((1 << pivot) - 1)
    high = (rep >> (pivot + 1)) << pivot
    return high | low


def simon_build(
    n: int,
    a: int,
    scramble_seed: Optional[int] = None,
    materialize_table: Optional[bool] = None,
) -> SimonOracle:
    """Construct a Simon oracle for mask a, optionally scrambling output labels.

    ``materialize_table=None`` builds the lookup table automatically for
    small n.  Scrambling requires materializing a permutation of 2**(n-1)
    labels and is therefore capped at n <= TABLE_CAP_QUBITS.
    """
    if n < 2:
        raise DomainError("Simon oracle needs at least two bits")
    if not 0 < a < (1 << n):
        raise PromiseError(f"xor-mask must satisfy 0 < a < 2^{n}, got {a}")
    pivot = (a & -a).bit_length() - 1

    scramble = None
    if scramble_seed is not None:
        if n > TABLE_CAP_QUBITS:
            raise CapacityError(
                f"scrambling materializes 2^{n - 1} labels; cap is n <= {TABLE_CAP_QUBITS}"
            )
        rng = np.random.default_rng(scramble_seed)
        scramble = rng.permutation(1 << (n - 1)).astype(np.int64)
        scramble.flags.writeable = False

    if materialize_table is None:
        materialize_table = n <= AUTO_TABLE_QUBITS
    table = None
    if materialize_table:
        if n > TABLE_CAP_QUBITS:
            raise CapacityError(f"table materialization capped at n <= {TABLE_CAP_QUBITS}")
        w_all = np.arange(1 << n, dtype=np.int64)
        table = _canonical_g(n, a, pivot, w_all)
        if scramble is not None:
            table = scramble[table]
        table.flags.writeable = False

    return SimonOracle(
        n=n,
        a=a,
        pivot_bit=pivot,
        scramble_seed=scramble_seed,
        scramble=scramble,
        table=table,
    )


def simon_eval(oracle: SimonOracle, w: int) -> int:
    """g(w) as an (n-1)-bit integer."""
    if not 0 <= w < (1 << oracle.n):
        raise DomainError(f"input {w} out of range for {oracle.n} bits")
    if oracle.table is not None:
        return int(oracle.table[w])
    g = _canonical_g(oracle.n, oracle.a, oracle.pivot_bit, w)
    if oracle.scramble is not None:
        g = int(oracle.scramble[g])
    return int(g)


def simon_eval_all(oracle: SimonOracle, cap: int = TABLE_CAP_QUBITS) -> np.ndarray:
    """Vector of g(w) for all w < 2**n (refused above ``cap`` total input bits)."""
    if oracle.table is not None:
        return oracle.table
    if oracle.n > cap:
        raise CapacityError(f"exhaustive evaluation capped at n <= {cap}")
    w_all = np.arange(1 << oracle.n, dtype=np.int64)
    g = _canonical_g(oracle.n, oracle.a, oracle.pivot_bit, w_all)
    if oracle.scramble is not None:
        g = oracle.scramble[g]
    return g


@dataclass(frozen=True)
class PromiseReport:
    holds: bool
    witness: Optional[tuple] = None


def verify_promise(oracle: SimonOracle) -> PromiseReport:
    """Exhaustively check both directions of the 2-to-1 promise.

    Returns a violating input pair as witness when the promise fails.
    """
    if oracle.n > TABLE_CAP_QUBITS:
        raise CapacityError(f"exhaustive promise check capped at n <= {TABLE_CAP_QUBITS}")
    g = simon_eval_all(oracle)
    seen: dict[int, int] = {}
    for w in range(1 << oracle.n):
        gw = int(g[w])
        if gw in seen:
            y = seen[gw]
            if w ^ y != oracle.a:
                return PromiseReport(False, (y, w))
        else:
            seen[gw] = w
    for w in range(1 << oracle.n):
        if g[w] != g[w ^ oracle.a]:
            return PromiseReport(False, (w, w ^ oracle.a))
    return PromiseReport(True, None)


def oracle_record(obj) -> dict:
    """JSON-ready description of a BvMask or SimonOracle."""
    if isinstance(obj, BvMask):
        return {"problem": "bv", "n": obj.n, "a": obj.a}
    if isinstance(obj, SimonOracle):
        return {
            "problem": "simon",
            "n": obj.n,
            "a": obj.a,
            "pivot_bit": obj.pivot_bit,
            "scramble_seed": obj.scramble_seed,
        }
    raise DomainError(f"cannot serialize {type(obj).__name__}")


def oracle_from_record(record: dict):
    """Inverse of oracle_record."""
    problem = record.get("problem")
    if problem == "bv":
        return BvMask(n=record["n"], a=record["a"])
    if problem == "simon":
        oracle = simon_build(record["n"], record["a"], record.get("scramble_seed"))
        return oracle
    raise DomainError(f"unknown problem kind {problem!r}")
