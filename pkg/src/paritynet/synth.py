"""Synthesis strategies for the diagonal unitary exp(i*gamma*H).

Three network builders are provided: a greedy builder that repeatedly
realizes the closest remaining parity by Hamming weight, a gray-code
cofactor-partition builder, and the naive per-term phase-gadget ladder.
The greedy Gaussian-elimination pass supplies the return journey that
brings the wires back to the standard basis (up to a reported wire
permutation).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .f2 import (
    InvalidGateError,
    Parity,
    SingularMatrixError,
    WireState,
    gf2_rank,
    lex_key,
)
from .phasepoly import PhasePolynomial

NETWORK_METHODS = ("greedy", "graysynth", "ladder")
RETURN_METHODS = ("greedy_elim", "fallback_elim")


@dataclass(frozen=True)
class CNOT:
    control: int
    target: int


@dataclass(frozen=True)
class RZ:
    qubit: int
    angle: float


Gate = CNOT | RZ


@dataclass
class Circuit:
    """Ordered CNOT/RZ gate list on n wires plus an output wire permutation.

    ``output_permutation[w]`` is the input variable whose value wire w
    carries after the circuit; the identity list means no residual
    relabeling.
    """

    n: int
    gates: list[Gate] = field(default_factory=list)
    output_permutation: list[int] | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"qubit count must be >= 1, got {self.n}")
        if self.output_permutation is None:
            self.output_permutation = list(range(self.n))
        if sorted(self.output_permutation) != list(range(self.n)):
            raise ValueError(f"not a permutation of [0, {self.n}): {self.output_permutation}")
        for gate in self.gates:
            if isinstance(gate, CNOT):
                if gate.control == gate.target:
                    raise InvalidGateError("CNOT control and target must differ")
                if not (0 <= gate.control < self.n and 0 <= gate.target < self.n):
                    raise InvalidGateError(f"CNOT wires out of range: {gate}")
            elif isinstance(gate, RZ):
                if not 0 <= gate.qubit < self.n:
                    raise InvalidGateError(f"RZ wire out of range: {gate}")
            else:
                raise InvalidGateError(f"unsupported gate kind: {gate!r}")

    @property
    def cnot_count(self) -> int:
        return sum(1 for g in self.gates if isinstance(g, CNOT))

    @property
    def rz_count(self) -> int:
        return sum(1 for g in self.gates if isinstance(g, RZ))

    def has_identity_permutation(self) -> bool:
        return self.output_permutation == list(range(self.n))


@dataclass(frozen=True)
class Placement:
    """One realized parity: which wire carried it after how many CNOTs."""

    parity: Parity
    wire: int
    position: int


@dataclass
class SynthesisReport:
    circuit: Circuit
    cnot_count: int
    rz_count: int
    network_cnots: int
    return_cnots: int
    runtime_ms: float


def _check_network_input(parities: Iterable[Parity], n: int, min_weight: int) -> list[Parity]:
    items = list(parities)
    for p in items:
        if p.n != n:
            raise ValueError(f"parity length {p.n} != n={n}")
        if p.weight < min_weight:
            raise ValueError(
                f"parity {p.to_string()} has weight {p.weight}, need >= {min_weight}"
            )
    return items


def greedy_parity_network(
    parities: Iterable[Parity], n: int
) -> tuple[list[CNOT], WireState, list[Placement]]:
    """Build a parity network by always moving the closest remaining parity.

    Repeatedly picks the remaining target of smallest Hamming weight (ties:
    lexicographically smallest bitstring, leftmost bit most significant),
    applies one CNOT between its two lowest set positions (lowest as
    control), and rewrites all remaining targets into the new wire basis.
    Targets that reach unit weight sit on a wire and are logged.

    Returns the CNOT list, the final wire state (always unit lower
    triangular), and the placement log. Every input parity must have
    weight >= 2.
    """
    items = _check_network_input(parities, n, 2)
    cur = [p.bits for p in items]
    wts = [b.bit_count() for b in cur]
    lexs = [lex_key(b, n) for b in cur]
    origs = list(items)

    gates: list[CNOT] = []
    state = WireState.identity(n)
    placements: list[Placement] = []

    while cur:
        best = 0
        for k in range(1, len(cur)):
            if (wts[k], lexs[k]) < (wts[best], lexs[best]):
                best = k
        y = cur[best]
        i = (y & -y).bit_length() - 1
        rest = y & (y - 1)
        j = (rest & -rest).bit_length() - 1
        gates.append(CNOT(i, j))
        state.apply_cnot(i, j)

        mask_i = 1 << i
        mask_j = 1 << j
        lex_i = 1 << (n - 1 - i)
        pos = len(gates)
        nxt_cur: list[int] = []
        nxt_wts: list[int] = []
        nxt_lexs: list[int] = []
        nxt_origs: list[Parity] = []
        for k in range(len(cur)):
            b = cur[k]
            if b & mask_j:
                w = wts[k] + (-1 if b & mask_i else 1)
                b ^= mask_i
                if w == 1:
                    placements.append(Placement(origs[k], b.bit_length() - 1, pos))
                    continue
                nxt_cur.append(b)
                nxt_wts.append(w)
                nxt_lexs.append(lexs[k] ^ lex_i)
                nxt_origs.append(origs[k])
            else:
                nxt_cur.append(b)
                nxt_wts.append(wts[k])
                nxt_lexs.append(lexs[k])
                nxt_origs.append(origs[k])
        cur, wts, lexs, origs = nxt_cur, nxt_wts, nxt_lexs, nxt_origs

    return gates, state, placements


def graysynth(
    parities: Iterable[Parity], n: int
) -> tuple[list[CNOT], WireState, list[Placement]]:
    """Gray-code cofactor-partition parity network (comparison baseline).

    Maintains a stack of frames (parity subset in current coordinates,
    unused column mask, optional target wire). Popping a frame with a
    target sweeps every column that is 1 across all its members onto the
    target wire; the frame is then split on the unused column that leaves
    the most lopsided partition. Parities are logged when a sweep brings
    them to unit weight, or at leaf frames where they already sit on a
    wire. Weight-1 inputs are allowed; weight-0 rejected.
    """
    items = _check_network_input(parities, n, 1)
    cur = [p.bits for p in items]
    alive = [True] * len(items)

    gates: list[CNOT] = []
    state = WireState.identity(n)
    placements: list[Placement] = []

    def log_placement(k: int) -> None:
        placements.append(Placement(items[k], cur[k].bit_length() - 1, len(gates)))
        alive[k] = False

    full_cols = (1 << n) - 1
    stack: list[tuple[list[int], int, int | None]] = []
    if items:
        stack.append((list(range(len(items))), full_cols, None))

    while stack:
        members, cols, target = stack.pop()
        members = [k for k in members if alive[k]]
        if not members:
            continue

        if target is not None:
            mask_t = 1 << target
            while members:
                acc = full_cols
                for k in members:
                    acc &= cur[k]
                acc &= ~mask_t
                if not acc:
                    break
                j = (acc & -acc).bit_length() - 1
                gates.append(CNOT(j, target))
                state.apply_cnot(j, target)
                mask_j = 1 << j
                for k in range(len(cur)):
                    if alive[k] and cur[k] & mask_t:
                        cur[k] ^= mask_j
                        if cur[k].bit_count() == 1:
                            log_placement(k)
                members = [k for k in members if alive[k]]

        if not members:
            continue
        if cols == 0:
            # Leaf frame: any survivor must already sit on a single wire.
            for k in members:
                if cur[k].bit_count() != 1:
                    raise AssertionError(
                        f"leaf frame holds unrealized parity {cur[k]:b}"
                    )
                log_placement(k)
            continue

        best_j = -1
        best_size = -1
        c = cols
        while c:
            j = (c & -c).bit_length() - 1
            c &= c - 1
            ones = sum(1 for k in members if cur[k] >> j & 1)
            size = max(ones, len(members) - ones)
            if size > best_size:
                best_size = size
                best_j = j
        mask_b = 1 << best_j
        ones_side = [k for k in members if cur[k] & mask_b]
        zeros_side = [k for k in members if not cur[k] & mask_b]
        next_cols = cols & ~mask_b
        if zeros_side:
            stack.append((zeros_side, next_cols, target))
        if ones_side:
            stack.append((ones_side, next_cols, target if target is not None else best_j))

    return gates, state, placements


def greedy_gauss_elim(state: WireState) -> tuple[list[CNOT], list[int]]:
    """Reduce an invertible wire state to a permutation matrix, greedily.

    While some row has weight > 1, score every row pair by
    max(|A_i|, |A_j|) - |A_i xor A_j| and apply the best CNOT (ties:
    smallest pair; the lighter row is the control, equal weights give
    control to the lower index). If no pair scores positive the remainder
    is handed to the deterministic eliminator, which guarantees
    termination on any invertible input.

    Returns the CNOT list and the final permutation p with row w = e_p[w].
    The permutation is reported, not synthesized into swaps.
    """
    n = state.n
    rows = list(state.rows)
    if gf2_rank(rows, n) != n:
        raise SingularMatrixError("wire state is singular")
    wts = [r.bit_count() for r in rows]
    gates: list[CNOT] = []

    while max(wts) > 1:
        best_score = 0
        best_pair: tuple[int, int] | None = None
        for i in range(n):
            ri = rows[i]
            wi = wts[i]
            for j in range(i + 1, n):
                score = (wi if wi > wts[j] else wts[j]) - (ri ^ rows[j]).bit_count()
                if score > best_score:
                    best_score = score
                    best_pair = (i, j)
        if best_pair is None:
            gates.extend(_gauss_jordan(rows, n))
            break
        i, j = best_pair
        control, target = (i, j) if wts[i] <= wts[j] else (j, i)
        rows[target] ^= rows[control]
        wts[target] = rows[target].bit_count()
        gates.append(CNOT(control, target))

    return gates, [row.bit_length() - 1 for row in rows]


def fallback_gauss_elim(state: WireState) -> tuple[list[CNOT], list[int]]:
    """Deterministic column-by-column elimination to a permutation matrix."""
    n = state.n
    rows = list(state.rows)
    if gf2_rank(rows, n) != n:
        raise SingularMatrixError("wire state is singular")
    gates = _gauss_jordan(rows, n)
    return gates, [row.bit_length() - 1 for row in rows]


def _gauss_jordan(rows: list[int], n: int) -> list[CNOT]:
    """Clear each column to a single pivot 1; mutates rows to a permutation."""
    gates: list[CNOT] = []
    used = [False] * n
    for col in range(n):
        pivot = -1
        for r in range(n):
            if not used[r] and rows[r] >> col & 1:
                pivot = r
                break
        if pivot < 0:
            raise SingularMatrixError("matrix is singular")
        used[pivot] = True
        for r in range(n):
            if r != pivot and rows[r] >> col & 1:
                rows[r] ^= rows[pivot]
                gates.append(CNOT(pivot, r))
    return gates


def rz_angle(coefficient: float, gamma: float) -> float:
    """RZ angle implementing exp(i*gamma*b*Z_s): theta = -2*gamma*b."""
    return -2.0 * gamma * coefficient


def ladder_synthesis(poly: PhasePolynomial, gamma: float) -> Circuit:
    """Build every phase gadget independently (the naive upper-bound circuit).

    Terms are emitted in bitstring order; an order-k gadget is a descending
    CNOT chain onto the term's highest set wire, one RZ there, and the
    mirrored chain, costing exactly 2(k-1) CNOTs. No cross-gadget
    cancellation is attempted and the final wire state is the identity.
    """
    gates: list[Gate] = []
    for parity, coeff in sorted(poly.items(), key=lambda item: item[0].lex_key()):
        idx = parity.indices()
        chain = list(zip(idx, idx[1:]))
        gates.extend(CNOT(a, b) for a, b in chain)
        gates.append(RZ(idx[-1], rz_angle(coeff, gamma)))
        gates.extend(CNOT(a, b) for a, b in reversed(chain))
    return Circuit(poly.n, gates)


def place_rz(
    n: int,
    network_gates: Sequence[CNOT],
    placements: Sequence[Placement],
    poly: PhasePolynomial,
    gamma: float,
) -> Circuit:
    """Interleave RZ gates into a parity network at the logged positions.

    The placement log must cover each weight->=2 coefficient parity exactly
    once; weight-1 parities get their RZ on the home wire at circuit start.
    """
    seen: dict[Parity, int] = {}
    for pl in placements:
        seen[pl.parity] = seen.get(pl.parity, 0) + 1
        if pl.parity not in poly:
            raise ValueError(f"placement for parity {pl.parity.to_string()} with no coefficient")
    for parity in poly.supports():
        if parity.weight >= 2 and seen.get(parity, 0) != 1:
            raise ValueError(
                f"parity {parity.to_string()} placed {seen.get(parity, 0)} times, expected 1"
            )

    by_position: dict[int, list[RZ]] = {}
    singles = [p for p in poly.supports() if p.weight == 1]
    for parity in sorted(singles, key=Parity.lex_key):
        wire = parity.bits.bit_length() - 1
        by_position.setdefault(0, []).append(
            RZ(wire, rz_angle(poly.coefficient(parity), gamma))
        )
    for pl in placements:
        by_position.setdefault(pl.position, []).append(
            RZ(pl.wire, rz_angle(poly.coefficient(pl.parity), gamma))
        )

    gates: list[Gate] = []
    for pos in range(len(network_gates) + 1):
        gates.extend(by_position.get(pos, ()))
        if pos < len(network_gates):
            gates.append(network_gates[pos])
    return Circuit(n, gates)


def _swaps_to_identity(perm: list[int]) -> list[CNOT]:
    """Synthesize the residual permutation into wire swaps (3 CNOTs each)."""
    gates: list[CNOT] = []
    perm = list(perm)
    for wire in range(len(perm)):
        if perm[wire] == wire:
            continue
        other = perm.index(wire)
        gates.extend((CNOT(wire, other), CNOT(other, wire), CNOT(wire, other)))
        perm[wire], perm[other] = perm[other], perm[wire]
    return gates


_BUILDERS: dict[str, Callable[[Iterable[Parity], int], tuple[list[CNOT], WireState, list[Placement]]]] = {
    "greedy": greedy_parity_network,
    "graysynth": graysynth,
}

_ELIMINATORS: dict[str, Callable[[WireState], tuple[list[CNOT], list[int]]]] = {
    "greedy_elim": greedy_gauss_elim,
    "fallback_elim": fallback_gauss_elim,
}


def synthesize_diagonal(
    poly: PhasePolynomial,
    gamma: float,
    method: str = "greedy",
    return_method: str = "greedy_elim",
    force_identity: bool = False,
) -> SynthesisReport:
    """End-to-end builder for exp(i*gamma*H): network, RZ placement, return journey.

    The chosen network builder runs on the weight->=2 parities (weight-1
    terms cost no CNOTs and get their RZ up front); the return journey then
    restores the standard basis up to a wire permutation, which is reported
    unless ``force_identity`` turns it into explicit swaps. The ladder
    method needs no return journey. ``return_method`` selects the greedy
    eliminator or the deterministic fallback eliminator.
    """
    start = time.perf_counter()
    if method not in NETWORK_METHODS:
        raise ValueError(f"unknown method {method!r}, expected one of {NETWORK_METHODS}")
    if return_method not in RETURN_METHODS:
        raise ValueError(
            f"unknown return method {return_method!r}, expected one of {RETURN_METHODS}"
        )

    if method == "ladder":
        circuit = ladder_synthesis(poly, gamma)
        network_cnots = circuit.cnot_count
        return_cnots = 0
    else:
        heavy = sorted(
            (p for p in poly.supports() if p.weight >= 2), key=Parity.lex_key
        )
        builder = _BUILDERS[method]
        net_gates, state, placements = builder(heavy, poly.n)
        circuit = place_rz(poly.n, net_gates, placements, poly, gamma)
        ret_gates, perm = _ELIMINATORS[return_method](state)
        circuit.gates.extend(ret_gates)
        network_cnots = len(net_gates)
        return_cnots = len(ret_gates)
        if force_identity and perm != list(range(poly.n)):
            swap_gates = _swaps_to_identity(perm)
            circuit.gates.extend(swap_gates)
            return_cnots += len(swap_gates)
            perm = list(range(poly.n))
        circuit.output_permutation = perm

    runtime_ms = (time.perf_counter() - start) * 1e3
    return SynthesisReport(
        circuit=circuit,
        cnot_count=circuit.cnot_count,
        rz_count=circuit.rz_count,
        network_cnots=network_cnots,
        return_cnots=return_cnots,
        runtime_ms=runtime_ms,
    )
