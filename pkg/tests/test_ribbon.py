import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fatspine.ribbon import (Fatgraph, FatgraphError, boundary_word, flip, flip_move, flippable_edges,
                             genus, graphs_equal, incoming_cycle, is_flippable, parse_fatgraph,
                             random_walk, relabel_darts, serialize_fatgraph, standard_spine,
                             theta_spine, to_dot, validate)

THETA_IOTA = (3, 4, 5, 0, 1, 2)
THETA_SIGMA = (1, 2, 0, 4, 5, 3)

# one vertex of valence 4 carrying two interleaved loops: valid, genus 1, not trivalent
ROSE = Fatgraph((2, 3, 0, 1), (1, 2, 3, 0), (0, 1, 0, 1))


def _failed(report):
    return " | ".join(f"{c.name}: {c.message}" for c in report.failures())


def test_theta_tables():
    fg = theta_spine()
    assert fg.iota == THETA_IOTA and fg.sigma == THETA_SIGMA
    assert fg.edge_ids == (0, 1, 2, 0, 1, 2)


def test_validate_theta():
    report = validate(theta_spine())
    assert report.ok
    assert (report.genus, report.num_vertices, report.num_edges) == (1, 2, 3)
    assert genus(theta_spine()) == 1
    assert theta_spine().is_trivalent


def test_validate_fixed_point():
    fg = Fatgraph((0, 4, 5, 3, 1, 2), THETA_SIGMA, (0, 1, 2, 0, 1, 2))
    report = validate(fg)
    assert not report.ok
    assert "involution has fixed point" in _failed(report)


def test_validate_disjoint_thetas():
    iota = THETA_IOTA + tuple(x + 6 for x in THETA_IOTA)
    sigma = THETA_SIGMA + tuple(x + 6 for x in THETA_SIGMA)
    ids = (0, 1, 2, 0, 1, 2, 3, 4, 5, 3, 4, 5)
    report = validate(Fatgraph(iota, sigma, ids))
    text = _failed(report)
    assert "not connected" in text
    assert "single boundary" in text


def test_validate_never_raises_on_garbage():
    report = validate(Fatgraph((1, 1, 0), (0, 0, 0), (0, 0, 0)))
    assert not report.ok


def test_genus_requires_validation():
    with pytest.raises(FatgraphError, match="validation required"):
        genus(Fatgraph((0, 1), (0, 1), (0, 1)))


@pytest.mark.parametrize("g", [1, 2, 3, 4, 5])
def test_standard_spine_counts(g):
    fg = standard_spine(g)
    assert validate(fg).ok
    assert genus(fg) == g
    assert fg.num_vertices == 4 * g - 2 and fg.num_edges == 6 * g - 3
    assert fg.is_trivalent


def test_standard_spine_genus_one_is_theta():
    assert standard_spine(1) == theta_spine()


def test_standard_spine_rejects_genus_zero():
    with pytest.raises(FatgraphError):
        standard_spine(0)


def test_theta_boundary_word():
    # phi = sigma o iota: 0 -> sigma(3) = 4 -> sigma(1) = 2 -> sigma(5) = 3 -> sigma(0) = 1 -> sigma(4) = 5
    bw = boundary_word(theta_spine())
    assert tuple(bw.word) == (0, 4, 2, 3, 1, 5)
    assert len(bw.word) == 6


@pytest.mark.parametrize("g", [1, 2, 3])
def test_boundary_word_covers_every_dart_once(g):
    fg = standard_spine(g)
    word = boundary_word(fg).word
    assert sorted(word) == list(range(fg.num_darts))
    # successor is the face permutation
    for x, y in zip(word, word[1:] + word[:1]):
        assert fg.sigma[fg.iota[x]] == y


def test_boundary_word_rejects_two_faces():
    iota = THETA_IOTA + tuple(x + 6 for x in THETA_IOTA)
    sigma = THETA_SIGMA + tuple(x + 6 for x in THETA_SIGMA)
    with pytest.raises(FatgraphError, match="not once-punctured"):
        boundary_word(Fatgraph(iota, sigma, (0, 1, 2, 0, 1, 2, 3, 4, 5, 3, 4, 5)))


def test_incoming_cycle_theta():
    fg = theta_spine()
    # vertex 0 = u (tails of e0, e1, e2), vertex 1 = w (their heads)
    assert incoming_cycle(fg, 0) == (3, 4, 5)
    assert sorted(incoming_cycle(fg, 1)) == [0, 1, 2]
    assert all(len(incoming_cycle(fg, v)) == 3 for v in range(2))


def test_flippable():
    fg = theta_spine()
    assert is_flippable(fg, 0)
    assert not is_flippable(ROSE, 0)
    assert flippable_edges(standard_spine(2))


def test_flip_loop_edge_raises():
    with pytest.raises(FatgraphError, match="loop edge"):
        flip(ROSE, 0)


def test_flip_theta_twice():
    fg = theta_spine()
    once, _ = flip(fg, 0)
    assert validate(once).ok and genus(once) == 1 and once.num_edges == 3
    assert not graphs_equal(once, fg)
    twice, _ = flip(once, 0)
    assert graphs_equal(twice, fg)
    assert twice == fg


def test_flip_theta_outer_edges_coincide():
    # on theta, a and c (and b and d) are the two darts of one edge
    mv = flip_move(theta_spine(), 0)
    fg = theta_spine()
    assert fg.edge_ids[mv.a] == fg.edge_ids[mv.c]
    assert fg.edge_ids[mv.b] == fg.edge_ids[mv.d]


def test_flip_standard_spine_two():
    fg = standard_spine(2)
    for e in flippable_edges(fg):
        new, _ = flip(fg, e)
        assert validate(new).ok and genus(new) == 2


def test_graphs_equal_self():
    fg = standard_spine(2)
    assert graphs_equal(fg, fg)


def test_walk_empty():
    assert random_walk(theta_spine(), 0, 3).moves == ()


def test_walk_deterministic():
    a = random_walk(theta_spine(), 100, 42)
    b = random_walk(theta_spine(), 100, 42)
    assert a == b
    assert a.edge_sequence != random_walk(theta_spine(), 100, 43).edge_sequence


def test_walk_validates():
    w = random_walk(standard_spine(2), 1000, 7, check=True)
    assert len(w.moves) == 1000
    assert all(validate(fg).ok for fg in w.graphs())


def test_serialize_round_trip():
    fg = standard_spine(3)
    text = serialize_fatgraph(fg)
    assert graphs_equal(parse_fatgraph(text), fg)
    assert serialize_fatgraph(parse_fatgraph(text)) == text
    assert serialize_fatgraph(standard_spine(3)) == text


def test_serialize_fields():
    obj = json.loads(serialize_fatgraph(theta_spine()))
    assert obj == {"format": "fatgraph-v1", "num_darts": 6, "iota": list(THETA_IOTA),
                   "sigma": list(THETA_SIGMA), "edge_ids": [0, 1, 2, 0, 1, 2]}


@pytest.mark.parametrize("field, value", [
    ("iota", [3, 4, 5, 0, 1, 1]),
    ("sigma", [0, 0, 0, 4, 5, 3]),
    ("edge_ids", [0, 1]),
    ("num_darts", -2),
    ("format", "fatgraph-v0"),
])
def test_parse_names_bad_field(field, value):
    obj = json.loads(serialize_fatgraph(theta_spine()))
    obj[field] = value
    with pytest.raises(FatgraphError, match=field):
        parse_fatgraph(json.dumps(obj))


def test_parse_rejects_invalid_graph():
    obj = json.loads(serialize_fatgraph(theta_spine()))
    obj["iota"] = [0, 4, 5, 3, 1, 2]
    with pytest.raises(FatgraphError, match="involution has fixed point"):
        parse_fatgraph(json.dumps(obj))


def test_dot_theta():
    text = to_dot(theta_spine())
    lines = text.splitlines()
    assert sum(" -- " in line for line in lines) == 3
    assert sum("rotation=" in line for line in lines) == 2
    assert 'v0 [rotation="0 1 2"];' in text


def test_dot_parses():
    pydot = pytest.importorskip("pydot")
    (graph,) = pydot.graph_from_dot_data(to_dot(standard_spine(2)))
    assert len(graph.get_edges()) == 9
    assert len([n for n in graph.get_nodes() if n.get_name().startswith("v")]) == 6


@settings(max_examples=40, deadline=None)
@given(g=st.integers(1, 3), steps=st.integers(0, 60), seed=st.integers(0, 2**32))
def test_flip_involution_along_walks(g, steps, seed):
    for fg in random_walk(standard_spine(g), steps, seed).graphs():
        for e in flippable_edges(fg):
            once, _ = flip(fg, e)
            assert flip(once, e)[0] == fg


@settings(max_examples=40, deadline=None)
@given(g=st.integers(1, 3), perm_seed=st.randoms(use_true_random=False))
def test_relabel_preserves_validity(g, perm_seed):
    fg = standard_spine(g)
    perm = list(range(fg.num_darts))
    perm_seed.shuffle(perm)
    other = relabel_darts(fg, perm)
    report = validate(other)
    assert report.ok and report.genus == g
    assert len(boundary_word(other).word) == fg.num_darts
