"""Bit-vector and F2 matrix kernels underlying parity-network synthesis.

Parities are XORs of boolean variables stored as plain Python ints with
bit ``k`` (``1 << k``) holding variable ``x_k``; textual forms put ``x_0``
leftmost, so ``{x_0, x_2, x_3}`` over five variables reads ``"10110"``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class InvalidGateError(ValueError):
    """A gate with control equal to target, or a wire index out of range."""


class SingularMatrixError(ValueError):
    """An operation that requires an invertible F2 matrix got a singular one."""


def lex_key(bits: int, n: int) -> int:
    """Order key matching leftmost-first bitstring comparison (x_0 most significant)."""
    key = 0
    for k in range(n):
        if bits >> k & 1:
            key |= 1 << (n - 1 - k)
    return key


@dataclass(frozen=True)
class Parity:
    """An XOR of variables as a fixed-length bit vector in F2^n."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"variable count must be >= 1, got {self.n}")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"bit pattern 0b{self.bits:b} out of range for n={self.n}")

    @classmethod
    def from_string(cls, text: str) -> Parity:
        """Parse a bitstring whose leftmost character is x_0."""
        if not text or any(c not in "01" for c in text):
            raise ValueError(f"not a bitstring: {text!r}")
        bits = 0
        for k, c in enumerate(text):
            if c == "1":
                bits |= 1 << k
        return cls(len(text), bits)

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> Parity:
        bits = 0
        for i in indices:
            if not 0 <= i < n:
                raise ValueError(f"variable index {i} out of range for n={n}")
            bits |= 1 << i
        return cls(n, bits)

    def to_string(self) -> str:
        return format(self.bits, f"0{self.n}b")[::-1]

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def indices(self) -> tuple[int, ...]:
        return tuple(k for k in range(self.n) if self.bits >> k & 1)

    def lex_key(self) -> int:
        return lex_key(self.bits, self.n)

    def __str__(self) -> str:
        return self.to_string()


def hamming_weight(p: Parity) -> int:
    """Number of set bits."""
    return p.bits.bit_count()


def parity_rewrite_under_cnot(s: Parity, control: int, target: int) -> Parity:
    """Coordinate update dual to a CNOT: bit ``control`` absorbs bit ``target``.

    The gate CNOT(control, target) rewrites the wires' basis; a target
    parity expressed in that basis changes at position ``control`` only:
    s_control ^= s_target.
    """
    if control == target:
        raise InvalidGateError("control and target must differ")
    if not (0 <= control < s.n and 0 <= target < s.n):
        raise InvalidGateError(f"wire out of range for n={s.n}: ({control}, {target})")
    bits = s.bits
    if bits >> target & 1:
        bits ^= 1 << control
    return Parity(s.n, bits)


@dataclass
class WireState:
    """n x n invertible F2 matrix; row i is the parity carried by wire i.

    Invertibility is preserved by every exposed mutation and asserted only
    in tests, not at construction time.
    """

    n: int
    rows: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"wire count must be >= 1, got {self.n}")
        if not self.rows:
            self.rows = [1 << i for i in range(self.n)]
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.rows)}")

    @classmethod
    def identity(cls, n: int) -> WireState:
        return cls(n)

    def copy(self) -> WireState:
        return WireState(self.n, list(self.rows))

    def apply_cnot(self, control: int, target: int) -> None:
        """Row update for CNOT(control, target): row[target] ^= row[control]."""
        if control == target:
            raise InvalidGateError("control and target must differ")
        if not (0 <= control < self.n and 0 <= target < self.n):
            raise InvalidGateError(f"wire out of range for n={self.n}: ({control}, {target})")
        self.rows[target] ^= self.rows[control]

    def row(self, i: int) -> Parity:
        return Parity(self.n, self.rows[i])

    def is_invertible(self) -> bool:
        return gf2_rank(self.rows, self.n) == self.n


def wire_apply_cnot(state: WireState, control: int, target: int) -> WireState:
    """Functional form of the wire update; returns a new state."""
    out = state.copy()
    out.apply_cnot(control, target)
    return out


def is_lower_triangular(state: WireState) -> bool:
    return all(row >> (i + 1) == 0 for i, row in enumerate(state.rows))


def is_permutation(state: WireState) -> bool:
    seen = 0
    for row in state.rows:
        if row.bit_count() != 1:
            return False
        seen |= row
    return seen == (1 << state.n) - 1


def is_identity(state: WireState) -> bool:
    return all(row == 1 << i for i, row in enumerate(state.rows))


def max_row_weight(state: WireState) -> int:
    return max(row.bit_count() for row in state.rows)


def gf2_rank(rows: Sequence[int], n: int) -> int:
    """Rank over F2 via elimination on int-packed rows."""
    work = list(rows)
    rank = 0
    for col in range(n):
        pivot = None
        for r in range(rank, len(work)):
            if work[r] >> col & 1:
                pivot = r
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for r in range(len(work)):
            if r != rank and work[r] >> col & 1:
                work[r] ^= work[rank]
        rank += 1
        if rank == len(work):
            break
    return rank
