"""Packing: maximum sparse families, witness partitions, decomposition,
tree packing, and the degree-soaking constructions."""

from math import ceil, floor

import pytest

from partition_forge import (
    EdgeSubset,
    FamilyNotMaximal,
    Hyperedge,
    Hypergraph,
    HypothesisViolated,
    MultiGraph,
    NotPartitionConnected,
    SparseFamily,
    assignment_optimum,
    basis_size,
    constant,
    decompose_pc,
    fn_sum,
    half_degree_pc,
    hyper_bounded,
    is_pc,
    is_sparse,
    max_sparse,
    max_sparse_family,
    pack_trees_pc,
    spanning_host,
    vertex_bulk,
    witness_partition,
)
from conftest import (
    all_multigraphs,
    complete_graph,
    cycle_graph,
    is_spanning_tree,
    random_connected_multigraph,
    random_multigraph,
)

K4 = complete_graph(4)
C3 = cycle_graph(3)
L1 = constant(1)


def test_max_sparse_family_examples():
    fam = max_sparse_family(K4, [L1, L1])
    assert fam.size() == 6
    assert all(is_sparse(K4, p.members, L1) for p in fam.parts)
    fam = max_sparse_family(C3, [L1, L1])
    assert fam.size() == 3
    single = max_sparse_family(K4, [L1])
    assert single.parts[0].members == max_sparse(K4, L1).members


def test_family_methods_agree(rng):
    for _ in range(20):
        g = random_multigraph(rng, rng.randint(2, 5), rng.randint(0, 7))
        fns = [L1] * rng.randint(1, 2)
        a = max_sparse_family(g, fns, method="oracle")
        b = max_sparse_family(g, fns, method="augment")
        assert a.size() == b.size()


def test_family_size_matches_assignment_oracle(rng):
    for _ in range(25):
        g = random_multigraph(rng, rng.randint(2, 5), rng.randint(0, 7))
        fns = [rng.choice([L1, vertex_bulk(1, 0), constant(2)])
               for _ in range(rng.randint(1, 2))]
        best, _ = assignment_optimum(g, fns)
        fam = max_sparse_family(g, fns, method="augment")
        assert fam.size() == best


def test_witness_partition_examples():
    w = witness_partition(C3, max_sparse_family(C3, [L1]))
    assert w.blocks_as_lists() == [[0, 1, 2]]
    w = witness_partition(K4, max_sparse_family(K4, [L1, L1]))
    assert w.blocks_as_lists() == [[0], [1], [2], [3]]
    empty = MultiGraph(3, [])
    w = witness_partition(empty, max_sparse_family(empty, [L1]))
    assert w.blocks_as_lists() == [[0], [1], [2]]


def test_witness_partition_rejects_non_maximal():
    fam = SparseFamily(K4, [EdgeSubset(K4, [0]), EdgeSubset.empty(K4)], (L1, L1))
    with pytest.raises(FamilyNotMaximal):
        witness_partition(K4, fam)


def test_witness_partition_certificate_random(rng):
    # The two certificate properties are re-verified inside the call; the
    # size bound they imply is checked here against the oracle.
    for _ in range(15):
        g = random_multigraph(rng, rng.randint(2, 4), rng.randint(0, 6))
        fns = [L1] * rng.randint(1, 2)
        fam = max_sparse_family(g, fns)
        witness_partition(g, fam)
        best, _ = assignment_optimum(g, fns)
        assert fam.size() == best


def test_decompose_examples():
    dec = decompose_pc(K4, [L1, L1])
    assert dec.covers_all
    assert len(dec.parts[0].members | dec.parts[1].members) == 6
    for p in dec.parts:
        assert is_spanning_tree(4, [K4.edges[i] for i in p.members])
    tree = MultiGraph(4, [(0, 1), (1, 2), (2, 3)])
    with pytest.raises(NotPartitionConnected) as err:
        decompose_pc(tree, [L1, L1])
    assert err.value.partition is not None
    connected = MultiGraph(3, [(0, 1), (1, 2), (0, 1)])
    dec = decompose_pc(connected, [L1])
    assert dec.parts[0].members == frozenset(range(3))


def test_decompose_part_sizes_before_leftovers(rng):
    for _ in range(15):
        g = random_connected_multigraph(rng, rng.randint(2, 4), rng.randint(2, 6))
        fns = [L1, L1]
        if not is_pc(g, fn_sum(*fns)):
            continue
        fam = max_sparse_family(g, fns)
        for part, fn in zip(fam.parts, fns):
            assert len(part) == basis_size(g, fn)


def test_decompose_iff_oracle_exhaustive_small():
    # Existence of a two-part packing matches the sum-function
    # connectivity check, both ways, on all 4-vertex multigraphs with up
    # to six edges.
    fns = [L1, vertex_bulk(1, 0)]
    total = fn_sum(*fns)
    cap = sum(basis_size(MultiGraph(4, []), fn) for fn in fns)
    for g in all_multigraphs(4, 6):
        connected = is_pc(g, total)
        best, _ = assignment_optimum(g, fns)
        packable = best == cap
        assert connected == packable
        if connected:
            dec = decompose_pc(g, fns)
            assert dec.covers_all
            for part, fn in zip(dec.parts, fns):
                assert is_pc(spanning_host(g, part.members), fn)
        else:
            with pytest.raises(NotPartitionConnected):
                decompose_pc(g, fns)


def test_pack_trees_examples():
    dec = pack_trees_pc(K4, 2, 0)
    for p in dec.parts:
        assert is_spanning_tree(4, [K4.edges[i] for i in p.members])
    doubled = MultiGraph(4, list(K4.edges) * 2)
    dec = pack_trees_pc(doubled, 2, 1)
    assert len(dec.parts) == 3
    for p, fn in zip(dec.parts, [constant(1), constant(1), vertex_bulk(1, 0)]):
        assert is_pc(spanning_host(doubled, p.members), fn)
    dec = pack_trees_pc(C3, 0, 1)
    part = dec.parts[0]
    assert all(part.degree(v) >= 1 for v in range(3))
    with pytest.raises(NotPartitionConnected):
        pack_trees_pc(MultiGraph(2, [(0, 1)]), 0, 1)


def test_half_degree_examples():
    h = half_degree_pc(K4, L1, 0)
    degs = h.degrees()
    assert degs[0] <= floor(3 / 2) + 1 - 1
    assert all(degs[v] <= ceil(3 / 2) + 1 for v in range(4))
    assert is_pc(spanning_host(K4, h.members), L1)
    c4 = cycle_graph(4)
    h = half_degree_pc(c4, L1, 1)
    assert all(d <= 2 for d in h.degrees())
    with pytest.raises(HypothesisViolated):
        half_degree_pc(MultiGraph(3, [(0, 1), (1, 2), (2, 0)]), constant(2), 0)


def test_half_degree_rank3_hypergraph():
    # Three triples through every pair: 3-edge-connected at rank 3.
    hes = [Hyperedge([0, 1, 2]), Hyperedge([0, 1, 3]), Hyperedge([0, 2, 3]),
           Hyperedge([1, 2, 3])] * 2
    host = Hypergraph(4, hes)
    h = half_degree_pc(host, L1, 0)
    degs = h.degrees()
    for v in range(4):
        assert degs[v] <= ceil(2 * host.degree(v) / 3) + 1
    assert is_pc(spanning_host(host, h.members), L1)


def test_half_degree_bounds_random(rng):
    # Doubling a connected host makes it 2-edge-connected in the needed
    # sense; the halved bounds then hold vertexwise.
    done = 0
    while done < 30:
        g = random_connected_multigraph(rng, rng.randint(2, 5), rng.randint(0, 3))
        doubled = MultiGraph(g.n, list(g.edges) * 2)
        u = rng.randrange(g.n)
        h = half_degree_pc(doubled, L1, u)
        degs = h.degrees()
        for v in range(g.n):
            assert degs[v] <= ceil(doubled.degree(v) / 2) + 1
        assert degs[u] <= floor(doubled.degree(u) / 2) + 1 - 1
        done += 1


def test_hyper_bounded_trivial_and_violation():
    host = Hypergraph(3, [Hyperedge([0, 1, 2]), Hyperedge([0, 1, 2])])
    part = hyper_bounded(host, L1, [2, 2, 2])
    assert is_pc(spanning_host(host, part.members), L1)
    with pytest.raises(HypothesisViolated) as err:
        hyper_bounded(host, L1, [1, 1, 1])
    assert err.value.vertex_set is not None


def test_hyper_bounded_nontrivial_instance():
    # Degree 4 at the hub, bounded down to 2: the overshoot weights force
    # the complement part to absorb two hub edges.
    host = Hypergraph(
        3,
        [Hyperedge([0, 1]), Hyperedge([0, 1]), Hyperedge([0, 2]), Hyperedge([0, 2])],
    )
    part = hyper_bounded(host, L1, [2, 2, 2])
    degs = part.degrees()
    assert degs[0] <= 2 and degs[1] <= 2 and degs[2] <= 2
    assert is_pc(spanning_host(host, part.members), L1)


def test_hypergraph_packing_mirrors_graph_case(rng):
    from conftest import random_hypergraph

    for _ in range(10):
        h = random_hypergraph(rng, rng.randint(2, 4), rng.randint(1, 5), 3)
        fns = [L1, vertex_bulk(1, 0)]
        best, _ = assignment_optimum(h, fns)
        fam = max_sparse_family(h, fns, method="augment")
        assert fam.size() == best
        witness_partition(h, fam)
