"""Packing edge-disjoint sparse/partition-connected spanning subgraphs.

The central object is a family of pairwise edge-disjoint parts, part i
being l_i-sparse.  A maximum family is found either by an exhaustive
edge-assignment oracle (small instances) or by greedy insertion plus a
breadth-first search over edge replacements; the closure of replacement
moves also yields the witness partition that certifies maximality, whose
defining properties are re-verified before it is returned.

A host is (l_1+...+l_m)-partition-connected exactly when it decomposes
into m edge-disjoint spanning parts, part i being l_i-partition-connected
(the classic two-spanning-trees packing is the constant-1, m=2 case).
"""

from collections import deque
from math import ceil, floor

import numpy as np

from . import _kernels
from .bits import bit_list
from .errors import (
    FamilyNotMaximal,
    HypothesisViolated,
    NotPartitionConnected,
    ValidationError,
)
from .hosts import EdgeSubset, Partition, spanning_host
from .limits import ASSIGNMENT_ORACLE_STATES
from .setfn import ensure_properties, fn_sum, vertex_bulk, vertex_weights
from .sparse import basis_size, min_pc_subgraph
from .theta import pc_violation, theta_without

_PACK_FLAGS = ("intersecting-supermodular", "subadditive")


class SparseFamily:
    """Edge-disjoint parts over one host; part i is l_i-sparse."""

    def __init__(self, host, parts, functions):
        self.host = host
        self.parts = tuple(parts)
        self.functions = tuple(functions)
        seen = set()
        for p in self.parts:
            if p.members & seen:
                raise ValidationError("family parts overlap")
            seen |= p.members
        self.covered = frozenset(seen)

    def size(self):
        return len(self.covered)

    def uncovered(self):
        return frozenset(range(self.host.edge_count)) - self.covered

    def assignment(self):
        """Per-edge part index; m means unused."""
        m = len(self.parts)
        out = [m] * self.host.edge_count
        for i, p in enumerate(self.parts):
            for e in p.members:
                out[e] = i
        return tuple(out)

    def __repr__(self):
        return f"SparseFamily({[list(p.indices()) for p in self.parts]})"


class Decomposition:
    """Edge-disjoint spanning parts, part i l_i-partition-connected."""

    def __init__(self, parts, covers_all):
        self.parts = tuple(parts)
        self.covers_all = covers_all

    def __repr__(self):
        return f"Decomposition({[list(p.indices()) for p in self.parts]})"


def _sparse_ok(host, members, slack):
    ems = _kernels.as_mask_array(host.edge_masks[i] for i in sorted(members))
    return _kernels.sparse_violation(host.n, ems, slack) < 0


def _part_is_pc(host, members, l):
    sub = spanning_host(host, members)
    return pc_violation(sub, l, trust_flags=True) is None


def assignment_optimum(host, functions, *, cap=None):
    """Exhaustive oracle: assign every edge to a part or leave it unused,
    maximizing coverage subject to each part staying sparse.

    Returns ``(best_coverage, SparseFamily)``.
    """
    m = len(functions)
    slacks = np.stack([l.slack_table(host.n) for l in functions])
    ems = _kernels.as_mask_array(host.edge_masks)
    cap_val = np.int64(-1 if cap is None else cap)
    best, assign = _kernels.assignment_best(host.n, ems, slacks, cap_val)
    parts = [
        EdgeSubset(host, [e for e in range(host.edge_count) if assign[e] == i])
        for i in range(m)
    ]
    return int(best), SparseFamily(host, parts, functions)


def _closure(host, functions, start_assignment, *, augment):
    """Breadth-first search over single edge replacements.

    States are full part assignments.  With ``augment`` the search stops
    at the first state where an uncovered edge inserts directly into some
    part and returns the improved assignment; otherwise it exhausts the
    closure and returns the union of uncovered edge sets over all states.
    """
    m = len(functions)
    slacks = [l.slack_table(host.n) for l in functions]
    seen = {start_assignment}
    queue = deque([start_assignment])
    uncovered_union = set()
    while queue:
        assignment = queue.popleft()
        parts = [
            frozenset(e for e in range(host.edge_count) if assignment[e] == i)
            for i in range(m)
        ]
        uncovered = [e for e in range(host.edge_count) if assignment[e] == m]
        uncovered_union.update(uncovered)
        for e in uncovered:
            for i in range(m):
                if _sparse_ok(host, parts[i] | {e}, slacks[i]):
                    if augment:
                        new = list(assignment)
                        new[e] = i
                        return tuple(new), None
                    continue
                # e closes a circuit in part i: swap it with any edge of the
                # minimal partition-connected subgraph spanning e's vertices.
                q = min_pc_subgraph(
                    EdgeSubset(host, parts[i]),
                    functions[i],
                    host.edge_masks[e],
                    require_sparse=False,
                )
                inside = [
                    f
                    for f in sorted(parts[i])
                    if host.edge_masks[f] & ~q.vertices == 0
                ]
                for f in inside:
                    new = list(assignment)
                    new[e] = i
                    new[f] = m
                    key = tuple(new)
                    if key not in seen:
                        seen.add(key)
                        queue.append(key)
    return None, frozenset(uncovered_union)


def _greedy_family(host, functions):
    m = len(functions)
    slacks = [l.slack_table(host.n) for l in functions]
    parts = [set() for _ in range(m)]
    for e in range(host.edge_count):
        for i in range(m):
            if _sparse_ok(host, parts[i] | {e}, slacks[i]):
                parts[i].add(e)
                break
    assignment = [m] * host.edge_count
    for i, p in enumerate(parts):
        for e in p:
            assignment[e] = i
    return tuple(assignment)


def max_sparse_family(host, functions, *, method="auto", trust_flags=None):
    """Family of edge-disjoint sparse parts covering as many edges as
    possible.

    ``method="oracle"`` forces the exhaustive assignment search,
    ``method="augment"`` the replacement search; ``"auto"`` picks the
    oracle below a state-count threshold.
    """
    functions = list(functions)
    if not functions:
        raise ValidationError("need at least one set function")
    for l in functions:
        ensure_properties(l, _PACK_FLAGS, host.n, trust=trust_flags)
    m = len(functions)
    cap = min(
        host.edge_count,
        sum(max(0, basis_size(host, l)) for l in functions),
    )
    if method in ("auto", "augment"):
        # Greedy insertion alone often reaches the coverage cap, which is
        # an upper bound on any family; no search is needed then.
        assignment = _greedy_family(host, functions)
        if sum(1 for a in assignment if a < m) == cap:
            parts = [
                EdgeSubset(host, [e for e in range(host.edge_count)
                                  if assignment[e] == i])
                for i in range(m)
            ]
            return SparseFamily(host, parts, functions)
    if method == "auto":
        states = (m + 1) ** host.edge_count
        method = "oracle" if states <= ASSIGNMENT_ORACLE_STATES else "augment"
    if method == "oracle":
        _, family = assignment_optimum(host, functions, cap=cap)
        return family
    if method != "augment":
        raise ValidationError("method must be 'auto', 'oracle' or 'augment'")
    assignment = _greedy_family(host, functions)
    while True:
        improved, _ = _closure(host, functions, assignment, augment=True)
        if improved is None:
            break
        assignment = improved
    parts = [
        EdgeSubset(host, [e for e in range(host.edge_count) if assignment[e] == i])
        for i in range(m)
    ]
    return SparseFamily(host, parts, functions)


def witness_partition(host, family):
    """Partition certifying the family is maximum.

    Blocks are the connected components of the union of uncovered edge
    sets over the replacement closure.  Both certificate properties are
    re-verified: no uncovered edge crosses the partition, and every part
    induces a partition-connected piece on every block.  Together these
    imply no larger family exists; verification failure means the family
    was not maximum.
    """
    improved, uncovered_union = _closure(
        host, family.functions, family.assignment(), augment=False
    )
    if improved is not None:
        raise FamilyNotMaximal("an augmenting replacement sequence exists")
    parent = list(range(host.n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in uncovered_union:
        vs = bit_list(host.edge_masks[e])
        for v in vs[1:]:
            parent[find(v)] = find(vs[0])
    blocks = {}
    for v in range(host.n):
        blocks.setdefault(find(v), 0)
        blocks[find(v)] |= 1 << v
    partition = Partition(tuple(blocks.values()), host.full_mask)

    for e in family.uncovered():
        em = host.edge_masks[e]
        if not any(em & ~b == 0 for b in partition.blocks):
            raise FamilyNotMaximal("an uncovered edge crosses the witness partition")
    for part, l in zip(family.parts, family.functions):
        for block in partition.blocks:
            inside = [i for i in part.members if host.edge_masks[i] & ~block == 0]
            sub, verts = _induced_with_edges(host, block, inside)
            if pc_violation(sub, l, trust_flags=True) is not None:
                raise FamilyNotMaximal(
                    "a part is not partition-connected inside a witness block"
                )
    return partition


def _induced_with_edges(host, block, member_indices):
    """Induced host on a block, keeping only the listed edges."""
    from .hosts import Hyperedge, Hypergraph, MultiGraph

    verts = bit_list(block)
    pos = {v: j for j, v in enumerate(verts)}
    if host.is_hypergraph:
        hes = [
            Hyperedge(
                (pos[v] for v in host.hyperedges[i].vertices),
                None if host.hyperedges[i].head is None else pos[host.hyperedges[i].head],
            )
            for i in member_indices
        ]
        return Hypergraph(len(verts), hes), verts
    edges = [(pos[host.edges[i][0]], pos[host.edges[i][1]]) for i in member_indices]
    return MultiGraph(len(verts), edges), verts


def decompose_pc(host, functions, *, trust_flags=None):
    """Split the host into edge-disjoint spanning parts, part i
    l_i-partition-connected, covering every edge.

    Exists iff the host is (l_1+...+l_m)-partition-connected; that is
    checked first and a violating partition is reported otherwise.  Edges
    left over after packing join part 1 (edge addition preserves
    partition-connectivity), and every part is re-verified.
    """
    functions = list(functions)
    for l in functions:
        ensure_properties(l, _PACK_FLAGS, host.n, trust=trust_flags)
    total = fn_sum(*functions)
    witness = pc_violation(host, total, trust_flags=True)
    if witness is not None:
        raise NotPartitionConnected(
            "host is not partition-connected for the sum function", witness
        )
    family = max_sparse_family(host, functions, trust_flags=True)
    for part, l in zip(family.parts, functions):
        assert len(part) == basis_size(host, l), (
            "a maximum family part missed its basis size on a "
            "partition-connected host"
        )
    leftovers = family.uncovered()
    parts = [
        EdgeSubset(host, set(family.parts[0].members) | set(leftovers))
    ] + [family.parts[i] for i in range(1, len(functions))]
    for part, l in zip(parts, functions):
        assert _part_is_pc(host, part.members, l), "a part failed its recheck"
    return Decomposition(parts, covers_all=True)


def pack_trees_pc(graph, m, p, *, trust_flags=None):
    """Packing of m spanning trees plus p spanning parts that are
    partition-connected for the 1-on-vertices, 0-on-bulk function."""
    if m < 0 or p < 0 or m + p == 0:
        raise ValidationError("need m + p >= 1 parts")
    functions = [vertex_bulk(1, 1) for _ in range(m)] + [
        vertex_bulk(1, 0) for _ in range(p)
    ]
    return decompose_pc(graph, functions, trust_flags=trust_flags)


def half_degree_pc(host, l, u, *, trust_flags=None):
    """Partition-connected spanning part H with
    ``d_H(v) <= ceil((r-1)/r * d(v)) + l(v)`` everywhere and the reduced
    bound ``floor((r-1)/r * d(u)) + l(u) - l(V)`` at the chosen vertex
    (r = 2 on graphs, the rank on hypergraphs).

    Requires the host to be r*l-edge-connected.  The complement part is
    built to soak up degree at every vertex, so the bounds are forced.
    """
    ensure_properties(
        l, ("intersecting-supermodular", "subadditive", "nonnegative"),
        host.n, trust=trust_flags,
    )
    if not 0 <= u < host.n:
        raise ValidationError("u out of range")
    r = host.rank if host.is_hypergraph else 2
    if r < 2:
        raise ValidationError("host has no edges")
    for a in range(1, host.full_mask):
        d = sum(1 for em in host.edge_masks if em & a and em & ~a & host.full_mask)
        if d < r * l.value(a):
            raise HypothesisViolated(
                "host is not (rank*l)-edge-connected",
                clause="rl-edge-connected", vertex_set=a,
            )
    degs = host.degrees()
    lg = l.value(host.full_mask)
    weights = []
    for v in range(host.n):
        if v == u:
            weights.append(ceil(degs[v] / r) - l.value(1 << v) + lg)
        else:
            weights.append(floor(degs[v] / r) - l.value(1 << v))
    assert all(w >= 0 for w in weights), "edge-connectivity check left a negative weight"
    ell = vertex_weights(weights)
    dec = decompose_pc(host, [l, ell], trust_flags=True)
    h = dec.parts[0]
    hd = h.degrees()
    for v in range(host.n):
        bound = ceil((r - 1) * degs[v] / r) + l.value(1 << v)
        assert hd[v] <= bound, "degree bound failed"
    assert hd[u] <= floor((r - 1) * degs[u] / r) + l.value(1 << u) - lg
    return h


def hyper_bounded(host, l, h, *, trust_flags=None):
    """Partition-connected spanning sub-hypergraph with degrees at most h.

    The theta-versus-sigma hypothesis is checked for every vertex set S;
    when it holds, pairing l with the overshoot weights
    ``max(0, d(v) - h(v))`` makes the host decomposable and the l-part
    satisfies the bound.
    """
    from .extract import DegreeTarget
    from .hosts import sigma

    ensure_properties(l, _PACK_FLAGS, host.n, trust=trust_flags)
    hvals = DegreeTarget.of(h, host.n).resolve(host)
    lg = l.value(host.full_mask)
    for s in range(1 << host.n):
        lhs = theta_without(host, l, s, trust_flags=True)
        rhs = (
            sum(hvals[v] - l.value(1 << v) for v in bit_list(s))
            + lg
            - sigma(host, s)
        )
        if lhs > rhs:
            raise HypothesisViolated(
                "theta exceeds the degree-availability bound",
                clause="theta-sigma-condition", vertex_set=s,
            )
    degs = host.degrees()
    ell = vertex_weights([max(0, degs[v] - hvals[v]) for v in range(host.n)])
    dec = decompose_pc(host, [l, ell], trust_flags=True)
    part = dec.parts[0]
    pd = part.degrees()
    assert all(pd[v] <= hvals[v] for v in range(host.n)), "degree bound failed"
    return part
