"""Homology markings of oriented edges and the intersection form in coordinates.

Coordinates.  Take a spanning tree and let ``b_1, ..., b_2g`` be the non-tree
edges (in ``+`` orientation), with fundamental cycles ``gamma_j``.  The dual
loop of ``b_i`` crosses ``gamma_j`` exactly ``delta_ij`` times, so the markings
``mu(b_i)`` form the basis dual to the cycles, and for every oriented edge
``mu(e) = sum_j c_e(gamma_j) mu(b_j)`` where ``c_e`` is the coefficient of
``e`` in the cycle.  Coordinates are therefore cycle coefficients, and the
single geometric input is the intersection matrix ``J`` of the basis, read
from how the dual chords of two edges interleave on the boundary polygon.
"""

from __future__ import annotations

import dataclasses
from collections import deque
from typing import Sequence

import sympy

from .ribbon import (ROTATION, BoundaryWord, Fatgraph, FatgraphError, FlipMove, flip, incoming_cycle,
                     relabel_darts)
from .tensor import Wedge2, pair, wedge_basis

HVec = tuple[int, ...]

# +1: the dual chords of e and f cross positively when the boundary reads e, f-bar, e-bar, f.
# Pinned by requiring positive pairings at type-2 vertices; see the calibration tests.
CHORD_ORIENTATION = 1


@dataclasses.dataclass(frozen=True)
class Marking:
    """``coords[d]`` is the marking of the oriented edge with tail dart ``d``.

    ``basis_edges`` lists the oriented edges whose markings are the unit
    vectors.  It is ``None`` for markings carried along by flips, whose
    coordinate frame is inherited from an earlier graph.
    """

    coords: tuple[HVec, ...]
    J: tuple[tuple[int, ...], ...]
    basis_edges: tuple[int, ...] | None = None

    @property
    def rank(self) -> int:
        return len(self.J)

    @property
    def genus(self) -> int:
        return len(self.J) // 2


@dataclasses.dataclass(frozen=True)
class MarkedFatgraph:
    graph: Fatgraph
    marking: Marking

    @property
    def J(self):
        return self.marking.J

    @property
    def genus(self) -> int:
        return self.marking.genus

    def mu(self, e: int) -> HVec:
        return self.marking.coords[e]


# --------------------------------------------------------------------------
# cycle basis
# --------------------------------------------------------------------------


def spanning_tree(fg: Fatgraph) -> frozenset[int]:
    """Breadth-first tree from the vertex of dart 0, darts scanned in decreasing order."""
    root = fg.vertex_of[0]
    seen = {root}
    tree = set()
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for d in sorted(fg.vertices[v], reverse=True):
            w = fg.head(d)
            if w not in seen:
                seen.add(w)
                tree.add(fg.edge_ids[d])
                queue.append(w)
    return frozenset(tree)


def _root_paths(fg: Fatgraph, tree: frozenset[int]) -> dict[int, list[int]]:
    """For each vertex, the oriented tree edges of the path from the root."""
    root = fg.vertex_of[0]
    paths = {root: []}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for d in fg.vertices[v]:
            w = fg.head(d)
            if fg.edge_ids[d] in tree and w not in paths:
                paths[w] = paths[v] + [d]
                queue.append(w)
    if len(paths) != fg.num_vertices:
        raise FatgraphError("edge set is not a spanning tree")
    return paths


def basis_edges(fg: Fatgraph, tree: frozenset[int]) -> tuple[int, ...]:
    return tuple(fg.edge_darts(e)[0] for e in fg.edges if e not in tree)


def basis_cycles(fg: Fatgraph, tree: frozenset[int]) -> list[tuple[int, ...]]:
    """Fundamental cycles as coefficient vectors over darts (``c[iota d] = -c[d]``)."""
    paths = _root_paths(fg, tree)
    cycles = []
    for b in basis_edges(fg, tree):
        c = [0] * fg.num_darts

        def add(d, k):
            c[d] += k
            c[fg.iota[d]] -= k

        # b, then back from its head to its tail through the tree
        add(b, 1)
        for d in paths[fg.head(b)]:
            add(d, -1)
        for d in paths[fg.tail(b)]:
            add(d, 1)
        cycles.append(tuple(c))
    return cycles


def chain_boundary(fg: Fatgraph, chain: Sequence[int]) -> list[int]:
    """Vertex coefficients of the boundary of a 1-chain given on darts."""
    out = [0] * fg.num_vertices
    for d in range(fg.num_darts):
        if d < fg.iota[d]:
            out[fg.head(d)] += chain[d]
            out[fg.tail(d)] -= chain[d]
    return out


# --------------------------------------------------------------------------
# intersections
# --------------------------------------------------------------------------


def chord_sign(word: BoundaryWord, e: int, f: int, orientation: int = CHORD_ORIENTATION) -> int:
    """Intersection number of the dual loops of two oriented edges of distinct edges.

    The dual loop of ``e`` is the chord of the polygon joining the sides
    ``e`` and ``e-bar``; two chords meet iff their end points interleave.
    """
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    eb, fb = word.iota[e], word.iota[f]
    if f in (e, eb):
        raise ValueError("chord_sign needs two distinct edges")
    n = len(word)
    p0 = word.pos[e]
    k = (word.pos[eb] - p0) % n
    rf, rfb = (word.pos[f] - p0) % n, (word.pos[fb] - p0) % n
    if (rf < k) == (rfb < k):
        return 0
    return orientation if rfb < k else -orientation


def intersection_matrix(fg: Fatgraph, darts: Sequence[int], orientation: int = CHORD_ORIENTATION):
    word = fg.word
    return tuple(tuple(0 if fg.edge_ids[x] == fg.edge_ids[y] else chord_sign(word, x, y, orientation)
                       for y in darts) for x in darts)


def is_skew(J) -> bool:
    n = len(J)
    return all(J[i][j] == -J[j][i] for i in range(n) for j in range(n))


def det(J) -> int:
    return int(sympy.Matrix(J).det())


def compute_marking(fg: Fatgraph, orientation: int = CHORD_ORIENTATION) -> Marking:
    tree = spanning_tree(fg)
    basis = basis_edges(fg, tree)
    cycles = basis_cycles(fg, tree)
    coords = tuple(tuple(cyc[d] for cyc in cycles) for d in range(fg.num_darts))
    J = intersection_matrix(fg, basis, orientation)
    if not is_skew(J) or det(J) != 1:
        raise RuntimeError("convention calibration broken: basis intersection matrix is not "
                           "skew-symmetric and unimodular")
    return Marking(coords, J, basis)


def mark(fg: Fatgraph) -> MarkedFatgraph:
    return MarkedFatgraph(fg, compute_marking(fg))


def flip_marked(mfg: MarkedFatgraph, edge_id: int) -> tuple[MarkedFatgraph, FlipMove]:
    """Flip and carry the marking along; only the flipped edge changes.

    The new edge, oriented bottom to top, gets ``mu(a) + mu(d)``, which makes
    both new vertex sums vanish because ``mu(a) + mu(b) + mu(c) + mu(d) = 0``.
    """
    graph, move = flip(mfg.graph, edge_id)
    coords = list(mfg.marking.coords)
    up = tuple(x + y for x, y in zip(coords[move.a], coords[move.d]))
    coords[move.new_tail] = up
    coords[graph.iota[move.new_tail]] = tuple(-x for x in up)
    return MarkedFatgraph(graph, Marking(tuple(coords), mfg.marking.J, None)), move


def relabel_marked(mfg: MarkedFatgraph, perm: Sequence[int]) -> MarkedFatgraph:
    """Rename darts by ``perm`` keeping every marking (a relabeled copy of the same marked graph)."""
    coords = [None] * len(perm)
    for d, x in enumerate(perm):
        coords[x] = mfg.marking.coords[d]
    basis = mfg.marking.basis_edges
    basis = None if basis is None else tuple(perm[d] for d in basis)
    return MarkedFatgraph(relabel_darts(mfg.graph, perm), Marking(tuple(coords), mfg.marking.J, basis))


# --------------------------------------------------------------------------
# comparing coordinate systems
# --------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class BasisChangeMatrix:
    """``phi @ fresh.mu(f) == incremental.mu(f)`` for every oriented edge ``f``."""

    phi: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...]

    @property
    def determinant(self) -> int:
        return det(self.phi)

    def is_symplectic(self, J_incremental, J_fresh) -> bool:
        P = sympy.Matrix(self.phi)
        return P.T * sympy.Matrix(J_incremental) * P == sympy.Matrix(J_fresh)


def transport(incremental: MarkedFatgraph, fresh: MarkedFatgraph) -> BasisChangeMatrix:
    """Find the integer matrix taking ``fresh`` coordinates to ``incremental`` ones."""
    if incremental.graph != fresh.graph:
        raise ValueError("transport needs the same underlying graph")
    fg = fresh.graph
    n = fresh.marking.rank
    pivots: list[int] = []
    rows = sympy.zeros(0, n)
    for e in fg.edges:
        d = fg.edge_darts(e)[0]
        trial = rows.col_join(sympy.Matrix([fresh.mu(d)]))
        if trial.rank() > rows.rows:
            rows, pivots = trial, pivots + [d]
        if len(pivots) == n:
            break
    if len(pivots) < n:
        raise ValueError("fresh markings do not span H")
    F = sympy.Matrix([list(fresh.mu(d)) for d in pivots]).T
    I = sympy.Matrix([list(incremental.mu(d)) for d in pivots]).T
    P = I * F.inv()
    if any(not x.is_integer for x in P):
        raise ValueError("no integer basis change relates the two markings")
    for d in range(fg.num_darts):
        if list(P * sympy.Matrix(fresh.mu(d))) != list(incremental.mu(d)):
            raise ValueError(f"no single basis change fits oriented edge {d}")
    phi = tuple(tuple(int(P[i, j]) for j in range(n)) for i in range(n))
    return BasisChangeMatrix(phi, tuple(pivots))


def hermite_rank(vectors: Sequence[Sequence[int]]) -> tuple[int, bool]:
    """Rank of the row span and whether it is all of ``Z^n`` (via Hermite form)."""
    from sympy.matrices.normalforms import hermite_normal_form

    M = sympy.Matrix(vectors)
    n = M.cols
    H = hermite_normal_form(M.T)  # columns span the same lattice
    r = H.cols
    if r != n:
        return r, False
    return r, abs(H.det()) == 1


# --------------------------------------------------------------------------
# vertices and the symplectic form
# --------------------------------------------------------------------------


def vertex_type(mfg: MarkedFatgraph, vertex: int, rotation: int = ROTATION) -> int:
    """1 if the boundary order agrees with the counterclockwise order at the vertex, else 2."""
    fg = mfg.graph
    inc = incoming_cycle(fg, vertex, rotation)
    if len(inc) != 3:
        raise FatgraphError(f"vertex {vertex} is not trivalent")
    a, b, c = inc
    return 1 if fg.word.precedes_in_order(a, b, c) else 2


def omega_of(J) -> Wedge2:
    """The symplectic form: the wedge element corresponding to the identity of H.

    Under ``x (x) y -> (z -> (x.z) y)`` a tensor with matrix ``W`` maps to
    ``W^T J``, so the identity comes from ``W = -J^{-1}``.
    """
    M = sympy.Matrix(J)
    if M != -M.T or M.det() not in (1, -1):
        raise ValueError("form matrix must be skew-symmetric and unimodular")
    W = -M.inv()
    n = M.rows
    return Wedge2(n, [int(W[i, j]) for i, j in wedge_basis(n)])


__all__ = [
    "HVec", "Marking", "MarkedFatgraph", "BasisChangeMatrix", "CHORD_ORIENTATION",
    "spanning_tree", "basis_edges", "basis_cycles", "chain_boundary", "chord_sign",
    "intersection_matrix", "compute_marking", "mark", "flip_marked", "relabel_marked",
    "transport", "hermite_rank", "pair", "vertex_type", "omega_of", "is_skew", "det",
]
