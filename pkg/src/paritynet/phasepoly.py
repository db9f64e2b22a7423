"""Sparse higher-order Ising objectives as maps from parities to real weights.

A ``PhasePolynomial`` holds the coefficients b_s of H = sum_s b_s * Z_s,
where Z_s is the product of Pauli Z over the support of parity s and Z has
eigenvalue (-1)^x on bit value x. Constant terms are never stored: they only
contribute a global phase to the synthesized circuit.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Sequence

from .f2 import Parity

# Coefficients with magnitude at or below this are treated as exact zeros.
ZERO_COEFF_TOL = 1e-12


class PnFormatError(ValueError):
    """Malformed ".pn" parity-set text."""


class PhasePolynomial:
    """Map from Parity to real coefficient over n variables."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, pairs: Iterable[tuple[Parity, float]] = ()) -> None:
        if n < 1:
            raise ValueError(f"variable count must be >= 1, got {n}")
        self.n = n
        self._terms: dict[Parity, float] = {}
        for parity, coeff in pairs:
            self.add_term(parity, coeff)

    @classmethod
    def from_terms(
        cls, n: int, terms: Iterable[tuple[Iterable[int], float]]
    ) -> PhasePolynomial:
        """Build from (variable-index-set, coefficient) pairs, merging duplicates."""
        poly = cls(n)
        for indices, coeff in terms:
            parity = Parity.from_indices(n, indices)
            if parity.bits == 0:
                raise ValueError("constant term (empty index set) is not representable")
            poly.add_term(parity, coeff)
        return poly

    @classmethod
    def from_qubo(cls, q: Sequence[Sequence[float]]) -> PhasePolynomial:
        """Ising coefficients of x^T Q x under x_i = (1 - z_i)/2, constant dropped.

        Only entries with i <= j are read (upper triangle plus diagonal). For
        every assignment, the pseudo-boolean value and the resulting energy
        differ by the dropped constant only, so optima are preserved.
        """
        n = len(q)
        if n == 0 or any(len(row) != n for row in q):
            raise ValueError("QUBO matrix must be square and non-empty")
        poly = cls(n)
        for i in range(n):
            diag = q[i][i]
            if diag:
                poly.add_term(Parity(n, 1 << i), -diag / 2.0)
            for j in range(i + 1, n):
                w = q[i][j]
                if not w:
                    continue
                poly.add_term(Parity(n, 1 << i), -w / 4.0)
                poly.add_term(Parity(n, 1 << j), -w / 4.0)
                poly.add_term(Parity(n, (1 << i) | (1 << j)), w / 4.0)
        return poly

    def add_term(self, parity: Parity, coeff: float) -> None:
        """Merge one term; sums cancelling to ~0 remove the entry."""
        if parity.n != self.n:
            raise ValueError(f"parity length {parity.n} != polynomial n {self.n}")
        if parity.bits == 0:
            raise ValueError("constant term (zero parity) is not representable")
        total = self._terms.get(parity, 0.0) + coeff
        if abs(total) <= ZERO_COEFF_TOL:
            self._terms.pop(parity, None)
        else:
            self._terms[parity] = total

    def coefficient(self, parity: Parity) -> float:
        return self._terms.get(parity, 0.0)

    def items(self) -> Iterator[tuple[Parity, float]]:
        return iter(self._terms.items())

    def supports(self) -> list[Parity]:
        return list(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __contains__(self, parity: Parity) -> bool:
        return parity in self._terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PhasePolynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __repr__(self) -> str:
        return f"PhasePolynomial(n={self.n}, terms={len(self._terms)})"

    def allclose(self, other: PhasePolynomial, tol: float = 1e-9) -> bool:
        """Coefficient-wise comparison over the union of supports."""
        if self.n != other.n:
            return False
        for parity in set(self._terms) | set(other._terms):
            if abs(self.coefficient(parity) - other.coefficient(parity)) > tol:
                return False
        return True

    def energy(self, assignment: int) -> float:
        """Evaluate sum_s b_s * (-1)^<s, x> at the boolean assignment x."""
        total = 0.0
        for parity, coeff in self._terms.items():
            if (parity.bits & assignment).bit_count() & 1:
                total -= coeff
            else:
                total += coeff
        return total

    def ladder_upper_bound(self) -> int:
        """CNOT count of building every phase gadget independently: sum 2(k-1) per order-k term."""
        return sum(2 * (p.weight - 1) for p in self._terms)

    def is_sparse_bounded(self, degree: int) -> bool:
        """True iff every stored term has order at most ``degree``."""
        if degree < 1:
            raise ValueError(f"degree must be >= 1, got {degree}")
        return all(p.weight <= degree for p in self._terms)


def format_pn(poly: PhasePolynomial, comments: Iterable[str] = ()) -> str:
    """Render the ".pn" text form: comments, "n=<int>", then sorted term lines."""
    lines = [f"# {c}" for c in comments]
    lines.append(f"n={poly.n}")
    entries = sorted(poly.items(), key=lambda item: item[0].lex_key())
    for parity, coeff in entries:
        lines.append(f"{parity.to_string()} {coeff!r}")
    return "\n".join(lines) + "\n"


def parse_pn(text: str) -> PhasePolynomial:
    """Parse ".pn" text: optional "n=<int>" header, then "<bitstring> <coeff>" lines.

    "#" begins a comment; the leftmost bitstring character is x_0. Bitstrings
    whose length disagrees with the header (or the first term) are rejected.
    """
    n: int | None = None
    pending: list[tuple[int, str, float]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("n=") and not pending and n is None:
            try:
                n = int(line[2:])
            except ValueError:
                raise PnFormatError(f"line {lineno}: bad variable count {line!r}") from None
            if n < 1:
                raise PnFormatError(f"line {lineno}: variable count must be >= 1")
            continue
        fields = line.split()
        if len(fields) != 2:
            raise PnFormatError(f"line {lineno}: expected '<bitstring> <coefficient>', got {line!r}")
        bitstring, coeff_text = fields
        if any(c not in "01" for c in bitstring):
            raise PnFormatError(f"line {lineno}: not a bitstring: {bitstring!r}")
        try:
            coeff = float(coeff_text)
        except ValueError:
            raise PnFormatError(f"line {lineno}: bad coefficient {coeff_text!r}") from None
        if not math.isfinite(coeff):
            raise PnFormatError(f"line {lineno}: coefficient must be finite")
        if n is None:
            n = len(bitstring)
        if len(bitstring) != n:
            raise PnFormatError(
                f"line {lineno}: bitstring length {len(bitstring)} != n={n}"
            )
        if "1" not in bitstring:
            raise PnFormatError(f"line {lineno}: zero parity (constant term) not allowed")
        pending.append((lineno, bitstring, coeff))
    if n is None:
        raise PnFormatError("no 'n=' header and no terms: variable count unknown")
    poly = PhasePolynomial(n)
    for _, bitstring, coeff in pending:
        poly.add_term(Parity.from_string(bitstring), coeff)
    return poly
