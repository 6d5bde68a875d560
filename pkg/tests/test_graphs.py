import random
from itertools import permutations

import pytest

from biqbracket.code_utils.config_consts import CONFLUENCE_MAX_VERTICES
from biqbracket.diagram.gauss import parse_gauss
from biqbracket.errors import BracketError, InvalidVariantError
from biqbracket.graphs.canonical import canonical_code, isomorphic
from biqbracket.graphs.framed import (
    DISORIENTED,
    ORIENTED,
    VERTEX,
    FramedGraph,
    diagram_graph,
    graph_from_state,
    make_graph,
    random_graph,
)
from biqbracket.graphs.reduction import (
    absorb_circles,
    find_reductions,
    irreducibility,
    is_irreducible,
    normalize,
    r1_sites,
    r2_sites,
)

KINK = make_graph([3, 2, 1, 0])
FIGURE_EIGHT = make_graph([2, 3, 0, 1])
BIGON = make_graph([4, 5, 6, 7, 0, 1, 2, 3])

# Slot permutations that keep opposite half-edges opposite.
CROSS_SYMMETRIES = [p for p in permutations(range(4)) if all(p[s ^ 2] == p[s] ^ 2 for s in range(4))]


def relabel(graph, rng):
    order = list(range(graph.vertex_count))
    rng.shuffle(order)
    syms = [rng.choice(CROSS_SYMMETRIES) for _ in order]

    def image(h):
        v, slot = divmod(h, 4)
        return 4 * order[v] + syms[v][slot]

    matching = [0] * len(graph.matching)
    for h, p in enumerate(graph.matching):
        matching[image(h)] = image(p)
    return FramedGraph(matching, graph.free_circles)


def test_make_graph_validates_the_matching():
    with pytest.raises(BracketError):
        make_graph([1, 0, 3])
    with pytest.raises(BracketError):
        make_graph([0, 2, 1, 3])
    with pytest.raises(BracketError):
        make_graph([1, 0, 3, 2], free_circles=-1)
    assert len(CROSS_SYMMETRIES) == 8


def test_kink_reduces_to_a_circle():
    assert r1_sites(KINK)
    assert not r2_sites(KINK)
    form = normalize(KINK, 2)
    assert form.graph == FramedGraph((), 1)
    assert form.delta_exponent == 0
    assert str(form.code) == "○"
    assert normalize(KINK, 1).graph == KINK


def test_straight_loop_is_not_a_kink():
    assert not r1_sites(FIGURE_EIGHT)
    assert is_irreducible(FIGURE_EIGHT, 2)
    assert irreducibility(FIGURE_EIGHT) == (True, True)


def test_bigon_reduces_for_both_variants():
    assert r2_sites(BIGON)
    assert irreducibility(BIGON) == (False, False)
    for variant in (1, 2):
        form = normalize(BIGON, variant)
        assert form.graph == FramedGraph((), 1)
        assert form.delta_exponent == 1


def test_irreducibility_of_the_kink():
    assert irreducibility(KINK) == (True, False)
    assert is_irreducible(KINK, 1)
    assert not is_irreducible(KINK, 2)


def test_circles_become_powers_of_delta():
    form = absorb_circles(FramedGraph((), 3))
    assert form.graph == FramedGraph((), 1)
    assert form.delta_exponent == 2
    assert absorb_circles(FramedGraph((), 0)).delta_exponent == 0
    with_vertex = absorb_circles(FramedGraph(FIGURE_EIGHT.matching, 2))
    assert with_vertex.graph == FIGURE_EIGHT
    assert with_vertex.delta_exponent == 2
    assert str(canonical_code(FramedGraph((), 0))) == "∅"


def test_unknown_variant():
    with pytest.raises(InvalidVariantError):
        find_reductions(KINK, 3)
    with pytest.raises(InvalidVariantError):
        normalize(KINK, 0)


def test_state_graphs_of_a_kink():
    kink = parse_gauss("O1+U1+")
    assert diagram_graph(kink) == KINK
    assert graph_from_state(kink, [ORIENTED]) == FramedGraph((), 2)
    assert graph_from_state(kink, [DISORIENTED]) == FramedGraph((), 1)
    assert graph_from_state(kink, [VERTEX]) == KINK
    with pytest.raises(BracketError):
        graph_from_state(kink, [ORIENTED, ORIENTED])


def test_unlink_graph_is_two_circles():
    assert diagram_graph(parse_gauss("(), ()")) == FramedGraph((), 2)


def test_canonical_code_is_invariant_under_relabelling():
    rng = random.Random(5)
    for _ in range(200):
        graph = random_graph(rng, rng.randint(1, 5))
        twin = relabel(graph, rng)
        assert isomorphic(graph, twin)
        assert canonical_code(graph) == canonical_code(twin)


def test_canonical_code_separates_non_isomorphic_graphs():
    rng = random.Random(6)
    for _ in range(300):
        n = rng.randint(1, 3)
        first, second = random_graph(rng, n, 0), random_graph(rng, n, 0)
        assert (canonical_code(first) == canonical_code(second)) == isomorphic(first, second)


def test_vertex_count_of_codes():
    assert canonical_code(BIGON).vertex_count == 2
    assert canonical_code(FramedGraph((), 2)).vertex_count == 0
    assert str(canonical_code(BIGON)).startswith("fg1:")


@pytest.mark.parametrize("variant", [1, 2])
def test_normal_forms_do_not_depend_on_the_reduction_order(variant):
    rng = random.Random(variant)
    for _ in range(500):
        graph = random_graph(rng, rng.randint(0, CONFLUENCE_MAX_VERTICES))
        forms = [normalize(graph, variant, random.Random(k)) for k in range(3)]
        forms.append(normalize(graph, variant))
        assert len({(f.code, f.delta_exponent) for f in forms}) == 1
        assert is_irreducible(forms[0].graph, variant)
