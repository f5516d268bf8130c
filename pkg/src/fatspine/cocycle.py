"""The flip cocycle s, the vertex-sum cochain that cobounds it, and exact verifiers.

Everything is evaluated on :class:`MarkedFatgraph` values.  Along a walk
driven by :func:`flip_marked` the intersection matrix never changes, so each
identity below is an exact equality of integer tensors in one fixed frame.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable, Sequence

from .homology import MarkedFatgraph, flip_marked, omega_of, vertex_type
from .ribbon import (FatgraphError, FlipMove, flip_move, flippable_edges, graphs_equal,
                     incoming_cycle)
from .tensor import (Sym2W, Wedge2, cont12, cont13, eval_form, is_in_S2, outer_square, pair,
                     sym, wedge)

# --------------------------------------------------------------------------
# cochains on graphs
# --------------------------------------------------------------------------


def eta(mfg: MarkedFatgraph, vertex: int) -> Wedge2:
    a, b, c = _abc(mfg, vertex)
    mu = mfg.mu
    ab = wedge(mu(a), mu(b))
    if ab != wedge(mu(b), mu(c)) or ab != wedge(mu(c), mu(a)):
        raise RuntimeError(f"marking violates the vertex relation at vertex {vertex}")
    return ab


def _abc(mfg: MarkedFatgraph, vertex: int) -> tuple[int, int, int]:
    inc = incoming_cycle(mfg.graph, vertex)
    if len(inc) != 3:
        raise FatgraphError(f"vertex {vertex} is not trivalent")
    return inc


def etas(mfg: MarkedFatgraph) -> list[Wedge2]:
    return [eta(mfg, v) for v in range(mfg.graph.num_vertices)]


def xi(mfg: MarkedFatgraph) -> Sym2W:
    """``sum_v eta_v (x) eta_v``, i.e. half of ``sum_v eta_v . eta_v``."""
    total = Sym2W.zero(mfg.marking.rank)
    for w in etas(mfg):
        total = total + outer_square(w)
    if not is_in_S2(total):
        raise RuntimeError("xi does not lie in S^2(wedge^2 H)")
    return total


def omega_vertices(mfg: MarkedFatgraph) -> Wedge2:
    """Half the sum of ``eta_v`` over all vertices."""
    total = sum(etas(mfg), Wedge2.zero(mfg.marking.rank))
    try:
        return total.halve()
    except ValueError:
        raise RuntimeError("sum of eta_v has an odd coordinate") from None


def vertex_types(mfg: MarkedFatgraph) -> list[int]:
    return [vertex_type(mfg, v) for v in range(mfg.graph.num_vertices)]


def xi_prime(mfg: MarkedFatgraph) -> Wedge2:
    """Twice the sum of ``eta_v`` over type-2 vertices."""
    total = Wedge2.zero(mfg.marking.rank)
    for t, w in zip(vertex_types(mfg), etas(mfg)):
        if t == 2:
            total = total + w
    return 2 * total


def xi_tilde(mfg: MarkedFatgraph) -> Wedge2:
    """``eta_v`` summed with sign -1 on type-1 and +1 on type-2 vertices."""
    total = Wedge2.zero(mfg.marking.rank)
    for t, w in zip(vertex_types(mfg), etas(mfg)):
        total = total + w if t == 2 else total - w
    return total


# --------------------------------------------------------------------------
# the flip cocycle
# --------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class FlipValue:
    s: Sym2W
    s_prime: Wedge2
    s_dprime: Wedge2
    move: FlipMove


def s_flip(mfg: MarkedFatgraph, edge_id: int) -> FlipValue:
    """``(mu a ^ mu c) . (mu b ^ mu d)`` and its two contractions; ``mfg`` is untouched."""
    mv = flip_move(mfg.graph, edge_id)
    mu = mfg.mu
    s = sym(wedge(mu(mv.a), mu(mv.c)), wedge(mu(mv.b), mu(mv.d)))
    J = mfg.J
    return FlipValue(s, cont12(s, J), cont13(s, J), mv)


def s_prime_formula(mfg: MarkedFatgraph, mv: FlipMove) -> Wedge2:
    """``2((a.c) b^d + (b.d) a^c)`` written out from the markings."""
    a, b, c, d = (mfg.mu(x) for x in (mv.a, mv.b, mv.c, mv.d))
    J = mfg.J
    return 2 * (pair(J, a, c) * wedge(b, d) + pair(J, b, d) * wedge(a, c))


def s_dprime_formula(mfg: MarkedFatgraph, mv: FlipMove) -> Wedge2:
    """``(a.b) c^d + (a.d) b^c + (c.d) a^b + (b.c) a^d`` written out from the markings."""
    a, b, c, d = (mfg.mu(x) for x in (mv.a, mv.b, mv.c, mv.d))
    J = mfg.J
    return (pair(J, a, b) * wedge(c, d) + pair(J, a, d) * wedge(b, c)
            + pair(J, c, d) * wedge(a, b) + pair(J, b, c) * wedge(a, d))


def accumulate_s(mfg: MarkedFatgraph, edges: Iterable[int]) -> tuple[Sym2W, MarkedFatgraph]:
    """Sum of ``s`` along a flip path, in the frame of the starting graph."""
    total = Sym2W.zero(mfg.marking.rank)
    current = mfg
    for e in edges:
        total = total + s_flip(current, e).s
        current, _ = flip_marked(current, e)
    return total, current


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------

PASS, FAIL, NA = "PASS", "FAIL", "N/A"


@dataclasses.dataclass
class VerificationReport:
    name: str
    status: str = PASS
    witness: dict = dataclasses.field(default_factory=dict)
    note: str = ""
    checks: list["VerificationReport"] = dataclasses.field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def lines(self) -> list[str]:
        if self.checks:
            out = []
            for c in self.checks:
                out += c.lines()
            return out
        out = [f"CHECK {self.name} {self.status}"]
        if self.status == FAIL:
            for key, val in self.witness.items():
                out.append(f"    {key}: {_dump(val)}")
        return out

    def __str__(self):
        return "\n".join(self.lines())


def _dump(x) -> str:
    return x.dump() if hasattr(x, "dump") else str(x)


def _compare(name: str, expected, got, **context) -> VerificationReport:
    if expected == got:
        return VerificationReport(name)
    return VerificationReport(name, FAIL, dict(context, expected=expected, got=got))


def _all_of(name: str, reports: Sequence[VerificationReport]) -> VerificationReport:
    """Fold many instances of one check into a single report (first failure kept)."""
    for r in reports:
        if r.status == FAIL:
            return VerificationReport(name, FAIL, r.witness, r.note)
    if reports and all(r.status == NA for r in reports):
        return VerificationReport(name, NA)
    return VerificationReport(name)


def verify_coboundary(mfg: MarkedFatgraph, edge_id: int) -> VerificationReport:
    """``xi(G') - xi(G) == s(W_e)`` for one flip."""
    after, _ = flip_marked(mfg, edge_id)
    return _compare(f"coboundary[e={edge_id}]", s_flip(mfg, edge_id).s, xi(after) - xi(mfg),
                    edge=edge_id)


def _share_vertices(mfg: MarkedFatgraph, e1: int, e2: int) -> int:
    fg = mfg.graph
    ends = [{fg.vertex_of[d] for d in fg.edge_darts(e)} for e in (e1, e2)]
    return len(ends[0] & ends[1])


def verify_pentagon(mfg: MarkedFatgraph, f_id: int, g_id: int) -> VerificationReport:
    """Five alternating flips ``f, g, f, g, f`` return to the start and the ``s`` values cancel."""
    name = f"pentagon[f={f_id},g={g_id}]"
    fg = mfg.graph
    if f_id == g_id or _share_vertices(mfg, f_id, g_id) != 1 or not all(
            len(set(fg.vertex_of[d] for d in fg.edge_darts(e))) == 2 for e in (f_id, g_id)):
        return VerificationReport(name, NA, note="edges do not share exactly one vertex")
    current = mfg
    total = Sym2W.zero(mfg.marking.rank)
    for e in (f_id, g_id, f_id, g_id, f_id):
        try:
            total = total + s_flip(current, e).s
        except FatgraphError as exc:
            return VerificationReport(name, NA, note=str(exc))
        current, _ = flip_marked(current, e)
    if graphs_equal(current.graph, fg):
        returned = "exact"
    elif graphs_equal(current.graph, fg, {f_id: g_id, g_id: f_id}):
        returned = "swapped"
    else:
        return VerificationReport(name, FAIL, {"returned": "no", "final": current.graph})
    if not total.is_zero():
        return VerificationReport(name, FAIL, {"expected": Sym2W.zero(total.n), "got": total},
                                  note=returned)
    return VerificationReport(name, note=returned)


def verify_commutativity(mfg: MarkedFatgraph, e1: int, e2: int) -> VerificationReport:
    name = f"commutativity[{e1},{e2}]"
    fg = mfg.graph
    if e1 == e2 or _share_vertices(mfg, e1, e2) or not all(
            len(set(fg.vertex_of[d] for d in fg.edge_darts(e))) == 2 for e in (e1, e2)):
        return VerificationReport(name, NA, note="edges share a vertex or are loops")
    s12, m12 = accumulate_s(mfg, (e1, e2))
    s21, m21 = accumulate_s(mfg, (e2, e1))
    if m12.graph != m21.graph:
        return VerificationReport(name, FAIL, {"graphs": "differ"})
    if m12.marking != m21.marking:
        return VerificationReport(name, FAIL, {"markings": "differ"})
    return _compare(name, s12, s21)


def verify_involutivity(mfg: MarkedFatgraph, edge_id: int) -> VerificationReport:
    """Flipping twice restores graph and marking, and the two ``s`` values cancel."""
    name = f"involutivity[e={edge_id}]"
    total, back = accumulate_s(mfg, (edge_id, edge_id))
    if back.graph != mfg.graph:
        return VerificationReport(name, FAIL, {"graph": "not restored"})
    if back.marking.coords != mfg.marking.coords:
        return VerificationReport(name, FAIL, {"marking": "not restored"})
    return _compare(name, Sym2W.zero(total.n), total)


def _graph_checks(mfg: MarkedFatgraph) -> dict[str, VerificationReport]:
    g = mfg.genus
    J = mfg.J
    out = {}
    x = xi(mfg)
    out["xi_in_S2"] = VerificationReport("xi_in_S2", PASS if is_in_S2(x) else FAIL)
    omega = omega_of(J)
    out["omega"] = _compare("omega", omega, omega_vertices(mfg))
    out["omega_form"] = _compare("omega_form", 2 * g, eval_form(omega, J))
    eta_sum = sum(etas(mfg), Wedge2.zero(mfg.marking.rank))
    out["eta_sum_form"] = _compare("eta_sum_form", 4 * g, eval_form(eta_sum, J))
    types = vertex_types(mfg)
    out["type2_count"] = _compare("type2_count", 2 * g, types.count(2))
    bad = []
    for v, t in enumerate(types):
        a, b, c = _abc(mfg, v)
        want = 0 if t == 1 else 1
        got = [pair(J, mfg.mu(p), mfg.mu(q)) for p, q in ((a, b), (b, c), (c, a))]
        if got != [want] * 3:
            bad.append((v, t, got))
    out["type_pairings"] = VerificationReport("type_pairings", FAIL if bad else PASS,
                                              {"vertices": bad} if bad else {})
    xp = xi_prime(mfg)
    out["xi_prime"] = _compare("xi_prime", cont12(x, J), xp)
    out["zeta"] = _compare("zeta", 2 * omega, xp - xi_tilde(mfg))
    return out


def _flip_checks(mfg: MarkedFatgraph, edge_id: int) -> dict[str, VerificationReport]:
    val = s_flip(mfg, edge_id)
    mv = val.move
    out = {}
    sp, sdp = s_prime_formula(mfg, mv), s_dprime_formula(mfg, mv)
    ok = val.s_prime == sp and val.s_dprime == sdp and val.s_prime == 2 * val.s_dprime and sp == 2 * sdp
    out["s_prime_twice_s_dprime"] = VerificationReport(
        "s_prime_twice_s_dprime", PASS if ok else FAIL,
        {} if ok else {"edge": edge_id, "cont12": val.s_prime, "formula'": sp,
                       "cont13": val.s_dprime, "formula''": sdp})
    after, _ = flip_marked(mfg, edge_id)
    out["xi_tilde_coboundary"] = _compare("xi_tilde_coboundary", val.s_prime,
                                          xi_tilde(after) - xi_tilde(mfg), edge=edge_id)
    out["coboundary"] = _compare("coboundary", val.s, xi(after) - xi(mfg), edge=edge_id)
    return out


def verify_identities(mfg: MarkedFatgraph) -> VerificationReport:
    """Every vertex-sum and contraction identity, on ``mfg`` and on each single-flip neighbour."""
    collected: dict[str, list[VerificationReport]] = {}

    def collect(reports):
        for key, r in reports.items():
            collected.setdefault(key, []).append(r)

    collect(_graph_checks(mfg))
    for e in flippable_edges(mfg.graph):
        collect(_flip_checks(mfg, e))
        neighbour, _ = flip_marked(mfg, e)
        collect(_graph_checks(neighbour))
    checks = [_all_of(key, rs) for key, rs in collected.items()]
    status = FAIL if any(c.status == FAIL for c in checks) else PASS
    return VerificationReport("identities", status, checks=checks)


def marking_is_consistent(mfg: MarkedFatgraph) -> bool:
    """Antisymmetry under reversal and vanishing vertex sums."""
    fg = mfg.graph
    coords = mfg.marking.coords
    if any(tuple(-x for x in coords[d]) != coords[fg.iota[d]] for d in range(fg.num_darts)):
        return False
    for v in fg.vertices:
        total = [0] * mfg.marking.rank
        for d in v:
            total = [x + y for x, y in zip(total, coords[fg.iota[d]])]
        if any(total):
            return False
    return True


__all__ = [
    "eta", "etas", "xi", "omega_vertices", "vertex_types", "xi_prime", "xi_tilde", "FlipValue",
    "s_flip", "s_prime_formula", "s_dprime_formula", "accumulate_s", "VerificationReport",
    "verify_coboundary", "verify_pentagon", "verify_commutativity", "verify_involutivity",
    "verify_identities", "marking_is_consistent", "PASS", "FAIL", "NA",
]
