import itertools

import pytest

from spectw.exact import (
    SizeLimitError,
    TDFormatError,
    TreeDecomposition,
    closed_form_tw,
    decomposition_from_order,
    exact_tw,
    min_degree_order,
    order_width,
    parse_td,
    single_bag,
    to_td,
    validate_td,
)
from spectw.graph import Graph, generate

from _corpus import branch_and_bound_tw, brute_force_tw, family_instances, gnp_corpus


@pytest.mark.parametrize(
    "desc,width", [("complete:4", 3), ("cycle:5", 2), ("path:6", 1), ("grid:3,3", 3), ("complete_bipartite:3,5", 3)]
)
def test_exact_examples(desc, width):
    g = generate(desc)
    res = exact_tw(g)
    assert res.width == width
    assert exact_tw(g, prune=False).width == width
    assert validate_td(g, res.decomposition).valid
    assert res.decomposition.width == width


def test_cycle5_grid33_independent():
    assert brute_force_tw(generate("cycle:5")) == 2
    assert branch_and_bound_tw(generate("grid:3,3")) == 3


def test_trivial_graphs():
    assert exact_tw(Graph(1)).width == 0
    assert exact_tw(Graph(5)).width == 0
    assert exact_tw(generate("complete:2")).width == 1


def test_size_refusal():
    with pytest.raises(SizeLimitError):
        exact_tw(generate("path:21"))
    with pytest.raises(SizeLimitError):
        exact_tw(generate("path:5"), limit=4)
    with pytest.raises(SizeLimitError):
        exact_tw(generate("path:5"), limit=25)
    with pytest.raises(ValueError):
        exact_tw(Graph(0))


def test_deterministic_order():
    g = generate("gnp:10,0.4,3")
    assert exact_tw(g).elimination_order == exact_tw(g).elimination_order


def test_plain_dp_ties_lowest_vertex():
    # on P3 every order has width 1; the last-eliminated vertex of each state is the lowest possible
    res = exact_tw(generate("path:3"), prune=False)
    assert res.width == 1
    assert res.elimination_order == (2, 1, 0)


@pytest.mark.parametrize("fam", [f for f in family_instances(14) if not (f.name == "grid" and min(f.args) < 2)],
                         ids=str)
def test_closed_form_agrees(fam):
    assert exact_tw(generate(fam)).width == closed_form_tw(fam)


@pytest.mark.parametrize(
    "desc,width", [("complete_bipartite:3,5", 3), ("complete:5", 4), ("grid:3,4", 3), ("path:2", 1), ("cycle:3", 2)]
)
def test_closed_form_examples(desc, width):
    assert closed_form_tw(desc) == width


@pytest.mark.parametrize("desc", ["grid:1,5", "gnp:5,0.3,1", "cycle:2", "complete:0"])
def test_closed_form_rejects(desc):
    with pytest.raises(ValueError):
        closed_form_tw(desc)


SMALL = [(name, g) for name, g in gnp_corpus() if g.n <= 7]


@pytest.mark.parametrize("name,g", SMALL[:40])
def test_against_brute_force(name, g):
    assert exact_tw(g).width == brute_force_tw(g)


@pytest.mark.parametrize("name,g", [c for c in gnp_corpus() if c[1].n == 8][:6])
def test_against_brute_force_n8(name, g):
    assert exact_tw(g).width == brute_force_tw(g)


@pytest.mark.parametrize("name,g", gnp_corpus()[::4])
def test_pruned_matches_plain_and_validates(name, g):
    res = exact_tw(g)
    assert res.width == exact_tw(g, prune=False).width
    report = validate_td(g, res.decomposition)
    assert report.valid, report.failures()
    assert res.decomposition.width == res.width
    assert order_width(g, res.elimination_order) == res.width


@pytest.mark.parametrize("name,g", [c for c in gnp_corpus() if c[1].n <= 10 and c[1].m][::6])
def test_edge_deletion_monotone(name, g):
    tw = exact_tw(g).width
    for u, v in g.edges[:: max(1, g.m // 4)]:
        assert exact_tw(g.remove_edge(u, v)).width <= tw


def test_min_degree_order_is_permutation():
    g = generate("grid:3,4")
    order = min_degree_order(g)
    assert sorted(order) == list(range(g.n))
    assert order_width(g, order) >= 3


def test_order_width_rejects_bad_order():
    with pytest.raises(ValueError):
        order_width(generate("path:3"), [0, 0, 1])


def test_decomposition_of_disconnected_graph_is_a_tree():
    g = Graph(6, ((0, 1), (2, 3), (4, 5)))
    td = decomposition_from_order(g, range(6))
    assert validate_td(g, td).valid


# -- validation ---------------------------------------------------------------


def test_validate_path_decomposition():
    g = generate("path:3")
    report = validate_td(g, TreeDecomposition([{0, 1}, {1, 2}], [(0, 1)]))
    assert report.valid and report.width == 1


def test_validate_triangle_incoherent():
    g = generate("complete:3")
    report = validate_td(g, TreeDecomposition([{0, 1}, {1, 2}, {0, 2}], [(0, 1), (1, 2)]))
    assert report.checks["edge_coverage"]
    assert not report.checks["coherence"]
    assert "vertex 0" in report.witnesses["coherence"]
    assert not report.valid


@pytest.mark.parametrize("desc", ["complete:4", "cycle:6", "gnp:9,0.4,2"])
def test_validate_single_bag(desc):
    g = generate(desc)
    report = validate_td(g, single_bag(g))
    assert report.valid and report.width == g.n - 1


def test_validate_failures():
    g = generate("path:4")
    assert not validate_td(g, TreeDecomposition([{0, 1}, {1, 2}], [(0, 1)])).checks["vertex_coverage"]
    r = validate_td(g, TreeDecomposition([{0, 1}, {2, 3}, {1, 3}], [(0, 2), (1, 2)]))
    assert not r.checks["edge_coverage"] and "(1, 2)" in r.witnesses["edge_coverage"]
    r = validate_td(g, TreeDecomposition([{0, 1, 2}, {2, 3}], []))
    assert not r.checks["tree"]
    r = validate_td(g, TreeDecomposition([{0, 1, 2}, {2, 3}, {3}], [(0, 1), (1, 2), (0, 2)]))
    assert not r.checks["tree"]
    r = validate_td(g, TreeDecomposition([{0, 1, 2, 3, 7}], []))
    assert not r.checks["labels"]


# -- PACE .td -----------------------------------------------------------------


def test_td_round_trip():
    g = generate("grid:3,3")
    td = exact_tw(g).decomposition
    text = to_td(td, g.n)
    assert text.startswith(f"s td {len(td.bags)} 4 9\n")
    back, n = parse_td(text)
    assert n == 9 and back == td
    assert validate_td(g, back).valid


def test_parse_external_td():
    text = "c external\ns td 3 2 4\nb 1 1 2\nb 2 2 3\nb 3 3 4\n1 2\n2 3\n"
    td, n = parse_td(text)
    assert n == 4 and td.width == 1
    assert validate_td(generate("path:4"), td).valid


@pytest.mark.parametrize(
    "text", ["b 1 1 2\n", "s td 2 2 2\nb 1 1 2\n", "s td 1 2 2\nb 1 1 x\n", "s td 1 2 2\nb 1 1 2\n1 2 3\n",
             "s td 1 2 2\nb 1 1\nb 1 2\n"]
)
def test_parse_td_rejects(text):
    with pytest.raises(TDFormatError):
        parse_td(text)


def test_permutation_brute_force_is_exhaustive():
    # sanity of the oracle itself: K4 minus an edge has treewidth 2
    g = Graph(4, tuple(e for e in itertools.combinations(range(4), 2) if e != (0, 1)))
    assert brute_force_tw(g) == 2 == branch_and_bound_tw(g)
