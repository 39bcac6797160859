"""GF(2) linear algebra on integer bitsets: rank, nullspace, mask recovery.

Rows are n-bit integers; bit k is column k.  Each stored row encodes one
linear constraint row . v = 0 (mod 2) on the unknown mask.  Elimination is
word-parallel XOR on Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import ContradictionError, DomainError


def dot2(x: int, a: int) -> int:
    """Bitwise dot product mod 2."""
    return (x & a).bit_count() & 1


@dataclass
class Gf2Matrix:
    """Accumulator for measurement rows; zero rows are counted but not stored."""

    n_cols: int
    rows: list = field(default_factory=list)
    zero_rows: int = 0

    def __post_init__(self) -> None:
        if self.n_cols < 1:
            raise DomainError("need at least one column")
        for row in self.rows:
            if not 0 < row < (1 << self.n_cols):
                raise DomainError(f"row {row} out of range (rows must be nonzero)")

    def add_row(self, x: int) -> bool:
        """Record a row; returns False for the (rank-inert) zero row."""
        if not 0 <= x < (1 << self.n_cols):
            raise DomainError(f"row {x} out of range for {self.n_cols} columns")
        if x == 0:
            self.zero_rows += 1
            return False
        self.rows.append(x)
        return True


def _reduced_echelon(rows: list, n_cols: int) -> tuple[list, list]:
    """Reduced row-echelon form; returns (nonzero rows, pivot columns)."""
    work = list(rows)
    pivots = []
    row_idx = 0
    for col in range(n_cols):
        pivot = None
        for r in range(row_idx, len(work)):
            if (work[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        work[row_idx], work[pivot] = work[pivot], work[row_idx]
        for r in range(len(work)):
            if r != row_idx and (work[r] >> col) & 1:
                work[r] ^= work[row_idx]
        pivots.append(col)
        row_idx += 1
        if row_idx == len(work):
            break
    return work[:row_idx], pivots


def rank(m: Gf2Matrix) -> int:
    """Rank over GF(2); the input is not modified."""
    _, pivots = _reduced_echelon(m.rows, m.n_cols)
    return len(pivots)


def nullspace(m: Gf2Matrix) -> list:
    """Basis of {v : row . v = 0 mod 2 for every row}; dimension n - rank."""
    echelon, pivots = _reduced_echelon(m.rows, m.n_cols)
    pivot_set = set(pivots)
    basis = []
    for free_col in range(m.n_cols):
        if free_col in pivot_set:
            continue
        v = 1 << free_col
        for row, pivot_col in zip(echelon, pivots):
            if (row >> free_col) & 1:
                v |= 1 << pivot_col
        basis.append(v)
    return basis


@dataclass(frozen=True)
class MaskRecovery:
    status: str  # "unique" | "underdetermined"
    a_candidate: Optional[int] = None


def recover_mask(m: Gf2Matrix) -> MaskRecovery:
    """Solve for the hidden mask once the rows pin it down.

    Rank n - 1 leaves exactly one nonzero solution (the mask); full rank is
    impossible under the promise and flags corrupted input rows.
    """
    r = rank(m)
    if r == m.n_cols:
        raise ContradictionError(
            "rows have full rank; no nonzero mask is orthogonal to all of them"
        )
    if r == m.n_cols - 1:
        (candidate,) = nullspace(m)
        return MaskRecovery(status="unique", a_candidate=candidate)
    return MaskRecovery(status="underdetermined", a_candidate=None)
