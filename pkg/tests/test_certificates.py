import json

import pytest

from rigiditykit.artin import RigidChain, artin_rigid_chain, raag_rigid_chain, vertex_delta_group
from rigiditykit.census import enumerate_connected, graph_from_matrix, matrix_from_code
from rigiditykit.certificates import (
    BrokenLink,
    InfiniteCenter,
    InfiniteSubgroupWitness,
    Join,
    ProductSplit,
    chain_to_certificate,
    check_certificate,
    dumps,
    from_dict,
    leaves,
    mutation_suite,
    scope_vertices,
    subgroup_infinite,
    to_dict,
    walk_nodes,
)
from rigiditykit.coxeter import CoxeterSystem, coxeter_rigidity_certificate
from rigiditykit.graph import is_complete_all_two

from helpers import cycle, graph, graph_e, graph_e_plus_f, join_graph, op2_graph, path, predicted_failures, triangle


def _depth_of_joins(node):
    return sum(1 for _, n in walk_nodes(node) if isinstance(n, Join))


def test_fold_pentagon():
    G = cycle(5)
    cert = chain_to_certificate(raag_rigid_chain(G), G)
    assert _depth_of_joins(cert) == 4
    assert all(isinstance(leaf, ProductSplit) for leaf in leaves(cert))
    rep = check_certificate(cert, G)
    assert rep.ok and rep.coverage_ok and rep.uncovered == []


def test_fold_single_edge():
    G = graph([("a", "b", 3)])
    cert = chain_to_certificate(artin_rigid_chain(G), G)
    assert isinstance(cert, InfiniteCenter)
    assert str(cert.center_witness) == "a b a a b a"
    assert check_certificate(cert, G).ok


def test_fold_fabricated_link():
    G = graph([("b", "c", 3), ("a", "b", 2)])
    Hb = vertex_delta_group(G, "b")
    chain = RigidChain([Hb, Hb], ["c"])
    with pytest.raises(BrokenLink):
        chain_to_certificate(chain, G)


def test_fold_scope_is_union():
    G = triangle(3, 2, 2)
    chain = artin_rigid_chain(G)
    cert = chain_to_certificate(chain, G)
    assert scope_vertices(cert) == set(G.vertices)


def test_graph_e_certificate_passes():
    G = graph_e()
    cert = coxeter_rigidity_certificate(CoxeterSystem.of(G))
    assert cert == ProductSplit(("b", "d", "e"), ("a", "c"))
    assert check_certificate(cert, G).ok


def test_graph_e_relabel_fails_product_split():
    G = graph_e()
    cert = coxeter_rigidity_certificate(CoxeterSystem.of(G))
    rep = check_certificate(cert, G.with_label("e", "a", 3))
    assert rep.failed == ["root"]


def test_subgroup_infinite_coxeter():
    G = graph([("a", "b", 3)], ["c"], kind="coxeter")
    assert subgroup_infinite(InfiniteSubgroupWitness("non_spherical_subset", ("a", "c")), None, G)
    assert not subgroup_infinite(InfiniteSubgroupWitness("non_spherical_subset", ("a", "b")), None, G)


def test_subgroup_infinite_vertex_generator():
    G = graph([("a", "b", 3)])
    H = artin_rigid_chain(G).entries[0]
    assert subgroup_infinite(InfiniteSubgroupWitness("vertex", "a"), H, G)


def _certs():
    yield "pentagon", cycle(5), chain_to_certificate(raag_rigid_chain(cycle(5)), cycle(5))
    G = path("abc", [2, 3])
    yield "path 2-3", G, chain_to_certificate(artin_rigid_chain(G), G)
    G = triangle(3, 2, 2)
    yield "triangle", G, chain_to_certificate(artin_rigid_chain(G), G)
    for name, G in [("E", graph_e()), ("E+f", graph_e_plus_f()), ("op2", op2_graph()), ("join", join_graph())]:
        yield name, G, coxeter_rigidity_certificate(CoxeterSystem.of(G))


@pytest.mark.parametrize("name, G, cert", list(_certs()), ids=lambda x: x if isinstance(x, str) else "")
def test_round_trip(name, G, cert):
    again = from_dict(json.loads(dumps(cert)), G)
    assert to_dict(again) == to_dict(cert)
    assert check_certificate(again, G).ok


@pytest.mark.parametrize("name, G, cert", list(_certs()), ids=lambda x: x if isinstance(x, str) else "")
def test_mutations_are_rejected_at_target(name, G, cert):
    assert check_certificate(cert, G).ok
    muts = mutation_suite(cert, G)
    assert muts
    for m in muts:
        rep = check_certificate(m.cert, m.graph)
        expected = predicted_failures(m, cert, G)
        assert m.target in expected
        assert rep.failed == expected, (m.name, rep.failed)


def test_join_graph_has_join_and_kills_witness_deletion():
    G = join_graph()
    cert = coxeter_rigidity_certificate(CoxeterSystem.of(G))
    assert _depth_of_joins(cert) >= 1
    names = {m.name for m in mutation_suite(cert, G)}
    assert any("join" in n for n in names)


def test_checker_catches_overlapping_parts():
    G = graph_e()
    rep = check_certificate(ProductSplit(("a", "b", "d", "e"), ("a", "c")), G)
    assert "root" in rep.failed


def test_checker_coverage_gap():
    G = graph_e()
    rep = check_certificate(ProductSplit(("b", "d"), ("a", "c")), G)
    assert not rep.coverage_ok and rep.uncovered == ["e"]


def test_all_artin_certificates_pass_exhaustive():
    for n, code in enumerate_connected(5, {2, 3}):
        G = graph_from_matrix(matrix_from_code(n, code), "artin")
        if is_complete_all_two(G):
            continue
        chain = raag_rigid_chain(G) if all(m == 2 for _, _, m in G.edges()) else artin_rigid_chain(G)
        cert = chain_to_certificate(chain, G)
        assert check_certificate(cert, G).ok, G.to_json()


def test_serialization_is_stable():
    G = triangle(3, 2, 2)
    a = dumps(chain_to_certificate(artin_rigid_chain(G), G))
    b = dumps(chain_to_certificate(artin_rigid_chain(G), G))
    assert a == b
