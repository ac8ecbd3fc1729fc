import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_force_tree_classes, nx_delta, to_nx
from inertia_lab.errors import Disconnected, InvalidSpec, OutOfRange, SizeLimit, UnsupportedGraph
from inertia_lab.graph_core import (
    Cycle, CyclePendants, EvenCycleOneTree, Graph, OppositePendants, Path, SaturatedCycle, Star,
    Tree, TriangleOneTree, all_pairs_distance_squared, build_family, canonical_form, cycle_q,
    enumerate_trees, find_cycle, format_family, graph_stats, parse_family, random_unicyclic,
    tree_from_pruefer,
)


# --- construction ----------------------------------------------------------

def test_path3():
    g = build_family(Path(3))
    assert g.n == 3 and g.edges == ((0, 1), (1, 2))


def test_saturated4_counts():
    g = build_family(SaturatedCycle(4))
    assert (g.n, g.m, graph_stats(g).leaves) == (8, 8, 4)


def test_opposite_pendants_2():
    g = build_family(OppositePendants(2))
    assert g.n == 6
    assert set(g.edges) == {(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (2, 5)}


def test_cycle_pendants_labels():
    g = build_family(CyclePendants(4, 2))
    assert g.n == 12
    assert set(g.adj[1]) == {0, 2, 6, 7}


@pytest.mark.parametrize("spec", [
    Cycle(2), SaturatedCycle(5), SaturatedCycle(2), CyclePendants(6, 0), OppositePendants(1),
    EvenCycleOneTree(5, Tree(())), Path(0),
])
def test_invalid_specs(spec):
    with pytest.raises(InvalidSpec):
        build_family(spec)


def test_graph_rejects_bad_edges():
    for edges in [((0, 0),), ((0, 3),), ((0, 1), (1, 0))]:
        with pytest.raises(InvalidSpec):
            Graph(3, edges)


def test_graph_json_roundtrip():
    g = build_family(EvenCycleOneTree(6, Tree((1, 1)), attach=2))
    assert Graph.from_json(g.to_json()) == g


@pytest.mark.parametrize("text", [
    "path:4", "star:5", "cycle:7", "saturated:6", "pendants:6x3", "opposite:4", "tree:0,0",
    "tree:k1", "tree:k2", "evencycle-tree:6+1,2@3", "triangle-tree:k1",
])
def test_parse_format_roundtrip(text):
    spec = parse_family(text)
    assert parse_family(format_family(spec)) == spec


@pytest.mark.parametrize("text", ["blob:3", "cycle:x", "pendants:6", "tree:a,b"])
def test_parse_rejects(text):
    with pytest.raises(InvalidSpec):
        parse_family(text)


# --- Prüfer ----------------------------------------------------------------

def test_pruefer_examples():
    assert tree_from_pruefer([], n=2).edges == ((0, 1),)
    assert tree_from_pruefer([0, 0]) == build_family(Star(4))
    assert tree_from_pruefer([1, 2]) == build_family(Path(4))


def test_pruefer_out_of_range():
    with pytest.raises(OutOfRange):
        tree_from_pruefer([0, 7])


@given(st.integers(3, 9).flatmap(lambda n: st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2)))
def test_pruefer_matches_networkx(seq):
    ours = tree_from_pruefer(seq)
    theirs = nx.from_prufer_sequence(seq)
    assert set(ours.edges) == {tuple(sorted(e)) for e in theirs.edges}


# --- distances -------------------------------------------------------------

def test_delta_examples():
    assert all_pairs_distance_squared(build_family(Path(3))).tolist() == [[0, 1, 4], [1, 0, 1], [4, 1, 0]]
    tri = build_family(TriangleOneTree(Tree((), n=1)))
    assert all_pairs_distance_squared(tri).tolist() == [
        [0, 1, 1, 1], [1, 0, 1, 4], [1, 1, 0, 4], [1, 4, 4, 0]]
    assert all_pairs_distance_squared(build_family(Cycle(4))).tolist()[0] == [0, 1, 4, 1]


def test_delta_triangle_pendant_up_to_relabeling():
    # the pendant and its attachment vertex are relabeled, the matrix is congruent by a permutation
    tri = build_family(TriangleOneTree(Tree((), n=1)))
    h = tri.relabel([1, 2, 3, 0])
    assert all_pairs_distance_squared(h).tolist() == [
        [0, 1, 4, 4], [1, 0, 1, 1], [4, 1, 0, 1], [4, 1, 1, 0]]


def test_delta_disconnected():
    with pytest.raises(Disconnected):
        all_pairs_distance_squared(Graph(3, ((0, 1),)))


@settings(max_examples=60)
@given(st.integers(3, 16), st.integers(0, 2**64 - 1))
def test_delta_matches_networkx(n, seed):
    g = random_unicyclic(n, seed)
    d = all_pairs_distance_squared(g).tolist()
    assert d == nx_delta(g)
    assert all(d[i][i] == 0 and all(d[i][j] == d[j][i] > 0 for j in range(i)) for i in range(n))


# --- stats -----------------------------------------------------------------

def test_stats_path4():
    s = graph_stats(build_family(Path(4)))
    assert (s.leaves, s.deg2_cut, s.cycle_length, s.q) == (2, 2, None, None)


def test_stats_even_cycle_with_edge():
    s = graph_stats(build_family(EvenCycleOneTree(4, Tree(()))))
    assert (s.n, s.leaves, s.deg2_cut, s.cycle_length, s.q) == (6, 1, 1, 4, 2)


@pytest.mark.parametrize("p,q", [(4, 2), (5, 2), (7, 4), (9, 4), (11, 6), (10, 5)])
def test_cycle_q(p, q):
    assert cycle_q(p) == q


def test_stats_rejects_bicyclic():
    with pytest.raises(UnsupportedGraph):
        graph_stats(Graph(4, ((0, 1), (1, 2), (2, 3), (3, 0), (0, 2))))


@settings(max_examples=60)
@given(st.integers(3, 16), st.integers(0, 2**64 - 1))
def test_stats_against_networkx(n, seed):
    g = random_unicyclic(n, seed)
    h = to_nx(g)
    s = graph_stats(g)
    cyc = nx.cycle_basis(h)
    assert len(cyc) == 1 and s.cycle_length == len(cyc[0])
    assert set(find_cycle(g)) == set(cyc[0])
    assert s.leaves == sum(1 for v in h if h.degree(v) == 1)
    cuts = set(nx.articulation_points(h))
    assert s.deg2_cut == sum(1 for v in h if h.degree(v) == 2 and v in cuts)
    assert not any(v in cuts for v in cyc[0] if h.degree(v) == 2)


def test_find_cycle_order():
    c = find_cycle(build_family(SaturatedCycle(6)))
    assert c == [0, 1, 2, 3, 4, 5]
    assert find_cycle(build_family(Path(5))) is None


# --- enumeration -----------------------------------------------------------

COUNTS = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551]


@pytest.mark.parametrize("n", range(1, 13))
def test_tree_counts(n):
    trees = enumerate_trees(n)
    assert len(trees) == COUNTS[n - 1]
    assert len({canonical_form(t) for t in trees}) == len(trees)
    assert all(t.n == n and t.m == n - 1 and t.is_connected() for t in trees)


@pytest.mark.parametrize("n", range(1, 8))
def test_tree_counts_brute_force(n):
    assert len(brute_force_tree_classes(n)) == len(enumerate_trees(n))


@pytest.mark.parametrize("n", range(4, 11))
def test_tree_classes_match_networkx(n):
    ours = enumerate_trees(n)
    theirs = list(nx.nonisomorphic_trees(n))
    assert len(ours) == len(theirs)
    for t in theirs:
        assert sum(nx.is_isomorphic(t, to_nx(o)) for o in ours) == 1


def test_enumeration_cap():
    with pytest.raises(SizeLimit):
        enumerate_trees(13)


@given(st.integers(3, 10).flatmap(lambda n: st.tuples(
    st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2), st.permutations(range(n)))))
def test_canonical_form_is_relabeling_invariant(args):
    seq, perm = args
    t = tree_from_pruefer(seq)
    assert canonical_form(t) == canonical_form(t.relabel(perm))


# --- random generator ------------------------------------------------------

def test_random_unicyclic_deterministic():
    assert random_unicyclic(12, 99) == random_unicyclic(12, 99)
    assert random_unicyclic(12, 99) != random_unicyclic(12, 100)


@given(st.integers(3, 20), st.integers(0, 2**64 - 1))
def test_random_unicyclic_is_unicyclic(n, seed):
    g = random_unicyclic(n, seed)
    assert g.n == n and g.m == n and g.is_connected()
