"""Trivalent fatgraph spines of a once-punctured surface, encoded by darts.

A graph with ``2E`` darts is given by two permutations of ``range(2E)``:

* ``iota`` pairs the two darts of each edge,
* ``sigma`` sends a dart to the next dart around its vertex, counterclockwise
  with respect to the surface orientation.

An oriented edge is identified with its tail dart ``d``; it runs from the
vertex of ``d`` to the vertex of ``iota[d]``.  The face permutation
``phi = sigma o iota`` walks the boundary of the cut-open polygon clockwise,
so a spine of a once-punctured surface has exactly one ``phi``-orbit.

Every edge also carries a stable integer ``edge_id``.  Flips keep dart
numbers and edge ids, which lets flip relations be checked by comparing
graphs directly.
"""

from __future__ import annotations

import dataclasses
import json
from collections import deque
from functools import cached_property
from typing import Iterator, Mapping, Sequence

import numpy as np

FORMAT_TAG = "fatgraph-v1"


class FatgraphError(ValueError):
    """Raised for malformed graphs and illegal operations on them."""


@dataclasses.dataclass(frozen=True)
class Fatgraph:
    iota: tuple[int, ...]
    sigma: tuple[int, ...]
    edge_ids: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "iota", tuple(int(x) for x in self.iota))
        object.__setattr__(self, "sigma", tuple(int(x) for x in self.sigma))
        object.__setattr__(self, "edge_ids", tuple(int(x) for x in self.edge_ids))
        n = len(self.iota)
        if len(self.sigma) != n or len(self.edge_ids) != n:
            raise FatgraphError("iota, sigma and edge_ids must have the same length")

    @property
    def num_darts(self) -> int:
        return len(self.iota)

    @property
    def num_edges(self) -> int:
        return self.num_darts // 2

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @cached_property
    def vertices(self) -> tuple[tuple[int, ...], ...]:
        """Sigma-orbits, each starting at its smallest dart, sorted by that dart."""
        return tuple(_orbits(self.sigma))

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        out = [0] * self.num_darts
        for k, orbit in enumerate(self.vertices):
            for d in orbit:
                out[d] = k
        return tuple(out)

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        phi = [self.sigma[self.iota[d]] for d in range(self.num_darts)]
        return tuple(_orbits(phi))

    @cached_property
    def _darts_by_edge(self) -> dict[int, tuple[int, int]]:
        out: dict[int, list[int]] = {}
        for d, e in enumerate(self.edge_ids):
            out.setdefault(e, []).append(d)
        return {e: tuple(sorted(ds)) for e, ds in out.items()}

    @property
    def edges(self) -> list[int]:
        return sorted(self._darts_by_edge)

    def edge_darts(self, edge_id: int) -> tuple[int, int]:
        """The two darts of an edge, smaller first (the ``+`` orientation)."""
        try:
            return self._darts_by_edge[edge_id]
        except KeyError:
            raise FatgraphError(f"unknown edge id {edge_id}") from None

    def head(self, e: int) -> int:
        """Vertex an oriented edge points toward."""
        return self.vertex_of[self.iota[e]]

    def tail(self, e: int) -> int:
        return self.vertex_of[e]

    def is_trivalent(self) -> bool:
        return all(len(v) == 3 for v in self.vertices)

    @cached_property
    def word(self) -> "BoundaryWord":
        return boundary_word(self)


def _orbits(perm: Sequence[int]) -> Iterator[tuple[int, ...]]:
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        orbit = []
        d = start
        while not seen[d]:
            seen[d] = True
            orbit.append(d)
            d = perm[d]
        yield tuple(orbit)


def reverse(fg: Fatgraph, e: int) -> int:
    """The oppositely oriented edge."""
    return fg.iota[e]


def is_plus(fg: Fatgraph, e: int) -> bool:
    return e < fg.iota[e]


def edge_label(fg: Fatgraph, e: int) -> str:
    return f"e{fg.edge_ids[e]}{'+' if is_plus(fg, e) else '-'}"


# --------------------------------------------------------------------------
# validation
# --------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    message: str = ""


@dataclasses.dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...]
    genus: int | None = None
    num_vertices: int | None = None
    num_edges: int | None = None

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __str__(self) -> str:
        lines = [f"{'PASS' if c.passed else 'FAIL'} {c.name}" + (f": {c.message}" if c.message else "")
                 for c in self.checks]
        if self.genus is not None:
            lines.append(f"genus {self.genus}, V = {self.num_vertices}, E = {self.num_edges}")
        return "\n".join(lines)


def _is_perm(p: Sequence[int]) -> bool:
    n = len(p)
    return sorted(p) == list(range(n))


def validate(fg: Fatgraph) -> ValidationReport:
    """Check every structural condition on a spine; never raises."""
    n = fg.num_darts
    checks = []

    def add(name, ok, msg=""):
        checks.append(Check(name, bool(ok), "" if ok else msg))

    add("even dart count", n % 2 == 0 and n > 0, f"{n} darts")
    iota_perm = _is_perm(fg.iota)
    sigma_perm = _is_perm(fg.sigma)
    add("iota is a permutation", iota_perm, "iota is not a permutation of the darts")
    add("sigma is a permutation", sigma_perm, "sigma is not a permutation of the darts")
    if not (iota_perm and sigma_perm):
        return ValidationReport(tuple(checks))

    fixed = [d for d in range(n) if fg.iota[d] == d]
    add("involution has no fixed point", not fixed, f"involution has fixed point {fixed[:5]}")
    invol = all(fg.iota[fg.iota[d]] == d for d in range(n))
    add("iota is an involution", invol, "iota o iota is not the identity")

    ids_ok = all(fg.edge_ids[d] == fg.edge_ids[fg.iota[d]] for d in range(n))
    distinct = sorted(set(fg.edge_ids)) == list(range(n // 2))
    add("edge ids", ids_ok and distinct,
        "edge ids must agree on both darts of an edge and be exactly 0..E-1")

    small = [v for v in fg.vertices if len(v) < 3]
    add("valence at least 3", not small, f"{len(small)} vertices of valence < 3")

    # connectivity through iota and sigma together
    seen = {0}
    queue = deque([0])
    while queue:
        d = queue.popleft()
        for x in (fg.iota[d], fg.sigma[d]):
            if x not in seen:
                seen.add(x)
                queue.append(x)
    add("connected", len(seen) == n, "not connected")
    add("single boundary", len(fg.faces) == 1,
        f"{len(fg.faces)} boundary cycles; not once-punctured")

    if not all(c.passed for c in checks):
        return ValidationReport(tuple(checks))

    v, e = fg.num_vertices, fg.num_edges
    chi = v - e
    g2 = 1 - chi
    add("euler characteristic", g2 % 2 == 0 and g2 >= 2, f"V - E = {chi}")
    if not checks[-1].passed:
        return ValidationReport(tuple(checks))
    return ValidationReport(tuple(checks), genus=g2 // 2, num_vertices=v, num_edges=e)


def genus(fg: Fatgraph) -> int:
    report = validate(fg)
    if not report.ok:
        raise FatgraphError("validation required: " + "; ".join(c.message for c in report.failures()))
    return report.genus


# --------------------------------------------------------------------------
# boundary word and vertex orders
# --------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class BoundaryWord:
    """Clockwise boundary of the cut-open polygon as a cyclic word of oriented edges."""

    word: tuple[int, ...]
    pos: tuple[int, ...]
    iota: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.word)

    def precedes_in_order(self, x: int, y: int, z: int) -> bool:
        """True iff ``x < y < z < x`` in the cyclic order."""
        n = len(self.word)
        px = self.pos[x]
        return (self.pos[y] - px) % n < (self.pos[z] - px) % n


def boundary_word(fg: Fatgraph) -> BoundaryWord:
    if len(fg.faces) != 1:
        raise FatgraphError(f"not once-punctured: {len(fg.faces)} boundary cycles")
    word = fg.faces[0]  # orbits start at their smallest dart
    pos = [0] * fg.num_darts
    for k, d in enumerate(word):
        pos[d] = k
    return BoundaryWord(word, tuple(pos), fg.iota)


# +1: incoming edges listed along sigma (counterclockwise); -1 would list them along sigma^-1.
ROTATION = 1


def incoming_cycle(fg: Fatgraph, vertex: int, rotation: int = ROTATION) -> tuple[int, ...]:
    """Oriented edges pointing toward ``vertex`` in counterclockwise order.

    The cycle starts at the edge whose head dart is the smallest dart of the
    vertex.  ``rotation=-1`` lists them clockwise instead; it exists only so
    the orientation convention can be tested against its alternative.
    """
    darts = fg.vertices[vertex]
    if rotation == -1:
        darts = (darts[0],) + tuple(reversed(darts[1:]))
    elif rotation != 1:
        raise ValueError("rotation must be +1 or -1")
    return tuple(fg.iota[d] for d in darts)


# --------------------------------------------------------------------------
# generators
# --------------------------------------------------------------------------


def theta_spine() -> Fatgraph:
    """Genus-one theta graph: vertices (0 1 2) and (3 4 5), edges {0,3}, {1,4}, {2,5}."""
    return Fatgraph(iota=(3, 4, 5, 0, 1, 2), sigma=(1, 2, 0, 4, 5, 3), edge_ids=(0, 1, 2, 0, 1, 2))


def _from_rotations(rotations: Sequence[Sequence[object]], partner: Mapping[object, object]) -> Fatgraph:
    """Number symbolic darts: edges get ids in order of first appearance,
    the first-seen dart of edge k becomes k and its partner k + E."""
    num_edges = len(partner) // 2
    index: dict[object, int] = {}
    next_edge = 0
    for rot in rotations:
        for h in rot:
            if h not in index:
                index[h] = next_edge
                index[partner[h]] = next_edge + num_edges
                next_edge += 1
    n = 2 * num_edges
    sigma = [0] * n
    for rot in rotations:
        for k, h in enumerate(rot):
            sigma[index[h]] = index[rot[(k + 1) % len(rot)]]
    iota = [(d + num_edges) % n for d in range(n)]
    return Fatgraph(iota, sigma, [d % num_edges for d in range(n)])


def standard_spine(g: int) -> Fatgraph:
    """A canonical trivalent spine of genus ``g``.

    Start from the rose with ``2g`` loops whose rotation reads
    ``a1 b1 A1 B1 a2 b2 A2 B2 ...`` (a chain of handles with one face), then
    blow its single vertex up into a caterpillar tree.  For ``g = 1`` this is
    exactly :func:`theta_spine`.
    """
    if not isinstance(g, (int, np.integer)) or g < 1:
        raise FatgraphError(f"genus must be a positive integer, got {g!r}")
    rose = []
    partner: dict[object, object] = {}
    for i in range(g):
        for letter in "ab":
            plus, minus = (letter, i, 1), (letter, i, -1)
            partner[plus], partner[minus] = minus, plus
        rose += [("a", i, 1), ("b", i, 1), ("a", i, -1), ("b", i, -1)]

    n = len(rose)
    rotations = []
    for k in range(n - 2):
        left = ("t", k - 1, -1) if k > 0 else rose[0]
        right = ("t", k, 1) if k < n - 3 else rose[n - 1]
        rotations.append((left, rose[k + 1], right))
    for k in range(n - 3):
        partner[("t", k, 1)], partner[("t", k, -1)] = ("t", k, -1), ("t", k, 1)
    return _from_rotations(rotations, partner)


# --------------------------------------------------------------------------
# flips
# --------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class FlipMove:
    """One flip, read off the input graph.

    Picture the flipped edge horizontally, oriented left to right by the dart
    ``tail``.  ``a`` (lower right) and ``b`` (upper right) point toward its
    right end, ``c`` (upper left) and ``d`` (lower left) toward its left end.
    After the flip the edge is vertical with ``b, c`` at the top and ``d, a``
    at the bottom; ``new_tail`` is the dart at the bottom, i.e. the new edge
    oriented upward.
    """

    edge_id: int
    tail: int
    a: int
    b: int
    c: int
    d: int
    new_tail: int
    direction: str = "forward"


def is_flippable(fg: Fatgraph, edge_id: int) -> bool:
    p, q = fg.edge_darts(edge_id)
    return fg.vertex_of[p] != fg.vertex_of[q]


def flippable_edges(fg: Fatgraph) -> list[int]:
    return [e for e in fg.edges if is_flippable(fg, e)]


def flip_move(fg: Fatgraph, edge_id: int) -> FlipMove:
    """Configuration of the flip along ``edge_id`` without performing it."""
    p, q = fg.edge_darts(edge_id)
    vl, vr = fg.vertex_of[p], fg.vertex_of[q]
    if vl == vr:
        raise FatgraphError(f"loop edge {edge_id} cannot be flipped")
    if len(fg.vertices[vl]) != 3 or len(fg.vertices[vr]) != 3:
        raise FatgraphError(f"edge {edge_id} does not have trivalent endpoints")
    s, io = fg.sigma, fg.iota
    ha, hb = s[q], s[s[q]]
    hc, hd = s[p], s[s[p]]
    # Which dart of the edge ends up at the bottom: tie it to the endpoint
    # holding the smallest outer dart, before and after, so that flipping
    # twice restores the darts exactly.
    m = min(ha, hb, hc, hd)
    p_with_m = m in (hc, hd)
    m_on_top = m in (hb, hc)
    bottom = q if p_with_m == m_on_top else p
    return FlipMove(edge_id, p, io[ha], io[hb], io[hc], io[hd], bottom)


def flip(fg: Fatgraph, edge_id: int) -> tuple[Fatgraph, FlipMove]:
    move = flip_move(fg, edge_id)
    io = fg.iota
    top = io[move.new_tail]
    bot = move.new_tail
    ha, hb, hc, hd = io[move.a], io[move.b], io[move.c], io[move.d]
    sigma = list(fg.sigma)
    sigma[top], sigma[hb], sigma[hc] = hb, hc, top
    sigma[bot], sigma[hd], sigma[ha] = hd, ha, bot
    return Fatgraph(fg.iota, sigma, fg.edge_ids), move


# --------------------------------------------------------------------------
# comparison, walks
# --------------------------------------------------------------------------


def graphs_equal(fg1: Fatgraph, fg2: Fatgraph, edge_map: Mapping[int, int] | None = None) -> bool:
    """Exact equality, or equality after renaming edges by ``edge_map``.

    With a map, darts of a renamed edge ``x`` are sent to the darts of
    ``edge_map[x]`` in either orientation; all other darts stay fixed.
    """
    if fg1.num_darts != fg2.num_darts:
        return False
    if not edge_map:
        return fg1 == fg2
    moved = sorted(x for x, y in edge_map.items() if x != y)
    if sorted(edge_map[x] for x in moved) != moved:
        return False
    try:
        targets = [fg2.edge_darts(edge_map[x]) for x in moved]
        sources = [fg1.edge_darts(x) for x in moved]
    except FatgraphError:
        return False
    n = fg1.num_darts
    for flips in range(1 << len(moved)):
        pi = list(range(n))
        for k, ((s0, s1), (t0, t1)) in enumerate(zip(sources, targets)):
            if flips >> k & 1:
                t0, t1 = t1, t0
            pi[s0], pi[s1] = t0, t1
        if all(fg2.iota[pi[d]] == pi[fg1.iota[d]] and fg2.sigma[pi[d]] == pi[fg1.sigma[d]]
               and fg2.edge_ids[pi[d]] == edge_map.get(fg1.edge_ids[d], fg1.edge_ids[d])
               for d in range(n)):
            return True
    return False


def relabel_darts(fg: Fatgraph, perm: Sequence[int]) -> Fatgraph:
    """The same graph with dart ``d`` renamed ``perm[d]``."""
    n = fg.num_darts
    inv = [0] * n
    for d, x in enumerate(perm):
        inv[x] = d
    iota = [perm[fg.iota[inv[x]]] for x in range(n)]
    sigma = [perm[fg.sigma[inv[x]]] for x in range(n)]
    ids = [fg.edge_ids[inv[x]] for x in range(n)]
    return Fatgraph(iota, sigma, ids)


def make_rng(seed: int) -> np.random.Generator:
    """Seeded PCG64 stream; the only randomness used anywhere in the package."""
    return np.random.Generator(np.random.PCG64(seed))


@dataclasses.dataclass(frozen=True)
class Walk:
    start: Fatgraph
    moves: tuple[FlipMove, ...]
    seed: int
    stopped_early: bool = False

    def graphs(self) -> Iterator[Fatgraph]:
        """Replay the walk, yielding the start graph and each graph after a move."""
        fg = self.start
        yield fg
        for mv in self.moves:
            fg, _ = flip(fg, mv.edge_id)
            yield fg

    @property
    def edge_sequence(self) -> list[int]:
        return [mv.edge_id for mv in self.moves]


def random_walk(fg: Fatgraph, steps: int, seed: int = 0, check: bool = False) -> Walk:
    """Flip ``steps`` times, each time at a uniformly chosen flippable edge.

    A move that flips the edge flipped by the preceding move undoes it and is
    recorded with ``direction="inverse"``.  With ``check=True`` every graph on
    the way is validated.
    """
    if steps < 0:
        raise ValueError("steps must be non-negative")
    rng = make_rng(seed)
    moves = []
    current = fg
    for _ in range(steps):
        choices = flippable_edges(current)
        if not choices:
            return Walk(fg, tuple(moves), seed, stopped_early=True)
        e = choices[int(rng.integers(len(choices)))]
        current, mv = flip(current, e)
        if moves and moves[-1].edge_id == e:
            mv = dataclasses.replace(mv, direction="inverse")
        moves.append(mv)
        if check and not validate(current).ok:
            raise FatgraphError(f"invalid graph after flipping edge {e}:\n{validate(current)}")
    return Walk(fg, tuple(moves), seed)


# --------------------------------------------------------------------------
# serialization
# --------------------------------------------------------------------------


def serialize_fatgraph(fg: Fatgraph) -> str:
    obj = {
        "format": FORMAT_TAG,
        "num_darts": fg.num_darts,
        "iota": list(fg.iota),
        "sigma": list(fg.sigma),
        "edge_ids": list(fg.edge_ids),
    }
    return json.dumps(obj, separators=(",", ":"))


def parse_fatgraph(text: str) -> Fatgraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FatgraphError(f"not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise FatgraphError("top level must be an object")
    if obj.get("format") != FORMAT_TAG:
        raise FatgraphError(f"field 'format' must be {FORMAT_TAG!r}")
    n = obj.get("num_darts")
    if not isinstance(n, int) or isinstance(n, bool) or n <= 0:
        raise FatgraphError("field 'num_darts' must be a positive integer")
    arrays = {}
    for name in ("iota", "sigma", "edge_ids"):
        arr = obj.get(name)
        if not isinstance(arr, list) or len(arr) != n or not all(
                isinstance(x, int) and not isinstance(x, bool) for x in arr):
            raise FatgraphError(f"field {name!r} must be a list of {n} integers")
        arrays[name] = arr
    for name in ("iota", "sigma"):
        if not _is_perm(arrays[name]):
            raise FatgraphError(f"field {name!r} is not a permutation of 0..{n - 1}")
    fg = Fatgraph(arrays["iota"], arrays["sigma"], arrays["edge_ids"])
    report = validate(fg)
    if not report.ok:
        raise FatgraphError("invalid fatgraph:\n" + str(report))
    return fg


def to_dot(fg: Fatgraph) -> str:
    lines = ["graph fatgraph {"]
    for k, darts in enumerate(fg.vertices):
        rot = " ".join(str(d) for d in darts)
        lines.append(f'  v{k} [rotation="{rot}"];')
    for e in fg.edges:
        p, q = fg.edge_darts(e)
        lines.append(f'  v{fg.vertex_of[p]} -- v{fg.vertex_of[q]} [label="{e}", darts="{p} {q}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
