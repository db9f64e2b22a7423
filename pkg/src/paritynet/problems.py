"""Benchmark problem families: random parity sets, full bounded-order
objectives, and graph coloring on connected caveman graphs."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .f2 import Parity
from .phasepoly import PhasePolynomial

TWO_PI = 2.0 * math.pi


def gen_random(n: int, num_terms: int, seed: int) -> PhasePolynomial:
    """Sample distinct nonzero parities uniformly without replacement.

    Draws min(num_terms, 2^n - 1) supports with coefficients uniform in
    [-pi, pi); asking for at least 2^n - 1 terms returns every nonzero
    parity. Deterministic for a fixed (n, num_terms, seed).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if num_terms < 1:
        raise ValueError(f"term count must be >= 1, got {num_terms}")
    rng = random.Random(seed)
    poly = PhasePolynomial(n)
    if n <= 30 and num_terms >= (1 << n) - 1:
        for bits in range(1, 1 << n):
            poly.add_term(Parity(n, bits), rng.uniform(-math.pi, math.pi))
        return poly
    chosen: set[int] = set()
    while len(chosen) < num_terms:
        bits = rng.getrandbits(n)
        if bits == 0 or bits in chosen:
            continue
        chosen.add(bits)
        poly.add_term(Parity(n, bits), rng.uniform(-math.pi, math.pi))
    return poly


def gen_full(n: int, k: int) -> PhasePolynomial:
    """All parities of order 1..k with unit coefficients.

    Coefficients do not affect CNOT counts, which depend on supports only.
    """
    if not 1 <= k <= n:
        raise ValueError(f"order must satisfy 1 <= k <= n, got k={k}, n={n}")
    poly = PhasePolynomial(n)
    for bits in range(1, 1 << n):
        if bits.bit_count() <= k:
            poly.add_term(Parity(n, bits), 1.0)
    return poly


@dataclass(frozen=True)
class CavemanGraph:
    """A cycle of modified cliques: two intra-clique edges removed per
    clique, one connecting edge per adjacent pair."""

    num_cliques: int
    clique_size: int
    edges: tuple[tuple[int, int], ...]

    @property
    def num_nodes(self) -> int:
        return self.num_cliques * self.clique_size


def gen_caveman_graph(num_cliques: int, clique_size: int) -> CavemanGraph:
    """Connected caveman graph on num_cliques * clique_size nodes.

    Clique c holds nodes c*k .. c*k + k - 1; edges (node 0, node 1) and
    (node 2, node 3) of each clique are removed and node 1 connects to
    node 0 of the next clique around the cycle.
    """
    if num_cliques < 3:
        raise ValueError(f"need at least 3 cliques, got {num_cliques}")
    if clique_size < 4:
        raise ValueError(f"need clique size >= 4, got {clique_size}")
    k = clique_size
    edges: list[tuple[int, int]] = []
    for c in range(num_cliques):
        base = c * k
        removed = {(base, base + 1), (base + 2, base + 3)}
        for a in range(k):
            for b in range(a + 1, k):
                edge = (base + a, base + b)
                if edge not in removed:
                    edges.append(edge)
        nxt = ((c + 1) % num_cliques) * k
        edges.append((base + 1, nxt))
    return CavemanGraph(num_cliques, clique_size, tuple(edges))


def coloring_polynomial(
    num_nodes: int, edges: list[tuple[int, int]] | tuple[tuple[int, int], ...], num_colors: int
) -> PhasePolynomial:
    """Penalty objective for graph coloring over binary-encoded colors.

    Node u's color is the integer with bits (u*b .. u*b + b - 1) where
    b = ceil(log2(num_colors)); qubit u*b + i is bit i. Each edge carries a
    same-color penalty and, when num_colors is not a power of two, each
    node carries one penalty per invalid code. Ground states (minimum
    energy) are exactly the proper colorings using valid codes.
    """
    if num_colors < 2:
        raise ValueError(f"need at least 2 colors, got {num_colors}")
    if num_nodes < 1:
        raise ValueError(f"need at least 1 node, got {num_nodes}")
    bits = max(1, (num_colors - 1).bit_length())
    n = bits * num_nodes
    scale = 0.5**bits
    poly = PhasePolynomial(n)

    for u, v in edges:
        if not (0 <= u < num_nodes and 0 <= v < num_nodes) or u == v:
            raise ValueError(f"bad edge ({u}, {v}) for {num_nodes} nodes")
        # Same-color indicator: product over bits of (1 + Z_u_i Z_v_i)/2.
        for subset in range(1, 1 << bits):
            support = 0
            for i in range(bits):
                if subset >> i & 1:
                    support |= 1 << (u * bits + i)
                    support |= 1 << (v * bits + i)
            poly.add_term(Parity(n, support), scale)

    for code in range(num_colors, 1 << bits):
        # Invalid-code indicator: product over bits of (1 + (-1)^code_i Z_u_i)/2.
        for u in range(num_nodes):
            for subset in range(1, 1 << bits):
                support = 0
                for i in range(bits):
                    if subset >> i & 1:
                        support |= 1 << (u * bits + i)
                sign = -1.0 if (code & subset).bit_count() & 1 else 1.0
                poly.add_term(Parity(n, support), sign * scale)

    return poly


def gen_coloring_polynomial(graph: CavemanGraph) -> PhasePolynomial:
    """Coloring objective for a caveman graph with clique_size - 1 colors."""
    if graph.clique_size < 4:
        raise ValueError(f"need clique size >= 4, got {graph.clique_size}")
    return coloring_polynomial(
        graph.num_nodes, graph.edges, graph.clique_size - 1
    )
