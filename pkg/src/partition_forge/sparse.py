"""Sparse spanning subgraphs and their matroid structure.

An edge set F is l-sparse when every vertex set A satisfies
``e_F(A) <= sum_{v in A} l(v) - l(A)``.  The maximal sparse sets are the
bases of a matroid; every basis has exactly ``sum l(v) - l(V)`` edges and
is minimally l-partition-connected.
"""

from itertools import combinations

import numpy as np

from . import _kernels
from .bits import as_mask, bit_count, bit_list, mask_of
from .errors import Disconnected, NotPartitionConnected, NotSparse, ValidationError
from .hosts import EdgeSubset
from .limits import EDGE_SEARCH_LIMIT, SUBSET_LIMIT, check
from .setfn import ensure_properties
from .theta import _sub_tables, pc_violation

_BASE_FLAGS = ("intersecting-supermodular", "weakly-subadditive")


class Basis:
    """A maximal l-sparse edge set (minimally partition-connected)."""

    def __init__(self, edges):
        self.edges = edges

    def indices(self):
        return self.edges.indices()

    def __eq__(self, other):
        return isinstance(other, Basis) and self.edges == other.edges

    def __hash__(self):
        return hash(self.edges)

    def __repr__(self):
        return f"Basis({list(self.indices())})"


def _members(host, edges):
    if isinstance(edges, Basis):
        edges = edges.edges
    if isinstance(edges, EdgeSubset):
        return edges.members
    return frozenset(int(i) for i in edges)


def sparse_violation(host, edges, l, *, limit=SUBSET_LIMIT, trust_flags=None):
    """First vertex set (as a mask) packing too many of the given edges,
    or None if the edge set is l-sparse."""
    ensure_properties(l, _BASE_FLAGS, host.n, trust=trust_flags)
    check(host.n, limit, "vertex count")
    members = _members(host, edges)
    ems = _kernels.as_mask_array(host.edge_masks[i] for i in sorted(members))
    bad = int(_kernels.sparse_violation(host.n, ems, l.slack_table(host.n)))
    return None if bad < 0 else bad


def is_sparse(host, edges, l, *, limit=SUBSET_LIMIT, trust_flags=None):
    return sparse_violation(host, edges, l, limit=limit, trust_flags=trust_flags) is None


def max_sparse(host, l, *, trust_flags=None):
    """Greedy maximal l-sparse edge set in index order; by the matroid
    property it also has maximum cardinality."""
    ensure_properties(l, _BASE_FLAGS, host.n, trust=trust_flags)
    slack = l.slack_table(host.n)
    chosen = []
    for i in range(host.edge_count):
        trial = _kernels.as_mask_array(
            [host.edge_masks[j] for j in chosen] + [host.edge_masks[i]]
        )
        if _kernels.sparse_violation(host.n, trial, slack) < 0:
            chosen.append(i)
    return EdgeSubset(host, chosen)


def basis_size(host, l):
    """Edge count of every basis: ``sum_v l(v) - l(V)``."""
    return sum(l.value(1 << v) for v in range(host.n)) - l.value(host.full_mask)


def _is_pc_members(host, members, l):
    """Partition-connectivity of the spanning subgraph with these edges."""
    if host.n == 0:
        return True
    ltab = l.table(host.n)
    ems = _kernels.as_mask_array(host.edge_masks[i] for i in sorted(members))
    _, _, exceeded = _kernels.partition_scan(host.n, ems, ltab, ltab[-1], True)
    return not exceeded


def _enumerate_bases(host, l, forced=frozenset(), *, trust_flags=None):
    ensure_properties(l, _BASE_FLAGS, host.n, trust=trust_flags)
    check(host.edge_count, EDGE_SEARCH_LIMIT, "edge count")
    witness = pc_violation(host, l, trust_flags=True)
    if witness is not None:
        raise NotPartitionConnected("host is not l-partition-connected", witness)
    target = basis_size(host, l)
    slack = l.slack_table(host.n)
    forced = frozenset(forced)
    bad = sparse_violation(host, forced, l, trust_flags=True)
    if bad is not None:
        raise NotSparse("forced edge set is not l-sparse", vertex_set=bad)
    free = [i for i in range(host.edge_count) if i not in forced]
    base = sorted(forced)

    def sparse_ok(members):
        ems = _kernels.as_mask_array(host.edge_masks[i] for i in members)
        return _kernels.sparse_violation(host.n, ems, slack) < 0

    def dfs(start, chosen):
        if len(chosen) == target:
            members = sorted(chosen)
            assert _is_pc_members(host, members, l), (
                "sparse set of full size failed the connectivity recheck"
            )
            yield Basis(EdgeSubset(host, members))
            return
        for pos in range(start, len(free)):
            if len(chosen) + (len(free) - pos) < target:
                return
            i = free[pos]
            trial = chosen + [i]
            if sparse_ok(trial):
                yield from dfs(pos + 1, trial)

    if len(base) > target:
        return
    if len(base) == target:
        if sparse_ok(base):
            yield Basis(EdgeSubset(host, base))
        return
    yield from dfs(0, base)


def enumerate_bases(graph, l, *, trust_flags=None):
    """Every minimally l-partition-connected spanning subgraph, exactly
    once, in lexicographic edge-index order.

    Each yielded basis is rechecked for partition-connectivity before it
    leaves the generator.
    """
    return _enumerate_bases(graph, l, trust_flags=trust_flags)


class MinPcResult:
    """Minimum vertex set spanning the targets, plus a uniqueness flag."""

    __slots__ = ("vertices", "unique")

    def __init__(self, vertices, unique):
        self.vertices = vertices
        self.unique = unique

    def vertex_list(self):
        return bit_list(self.vertices)

    def __repr__(self):
        return f"MinPcResult({self.vertex_list()}, unique={self.unique})"


def min_pc_subgraph(edges, l, targets, *, require_sparse=True, trust_flags=None):
    """Smallest vertex set X containing the targets such that the induced
    part of the edge set on X is l-partition-connected.

    Ties break to the lexicographically smallest set, and ``unique``
    reports whether another minimizer of the same size exists.  Raises
    :class:`Disconnected` when no X works.
    """
    if not isinstance(edges, EdgeSubset):
        raise ValidationError("min_pc_subgraph expects an EdgeSubset")
    host = edges.host
    y = as_mask(targets, host.n)
    if y == 0:
        raise ValidationError("target vertex set must be nonempty")
    if require_sparse:
        bad = sparse_violation(host, edges, l, trust_flags=trust_flags)
        if bad is not None:
            raise NotSparse("edge set is not l-sparse", vertex_set=bad)
    member_masks = [host.edge_masks[i] for i in edges.indices()]
    others = [v for v in range(host.n) if not (1 << v) & y]
    ny = bit_count(y)

    def induced_pc(x_mask):
        if bit_count(x_mask) <= 1:
            return True
        k, verts, _, ltab = _sub_tables(host, l, x_mask)
        pos = {v: j for j, v in enumerate(verts)}
        ems = _kernels.as_mask_array(
            mask_of(pos[v] for v in bit_list(em))
            for em in member_masks
            if em & ~x_mask == 0
        )
        _, _, exceeded = _kernels.partition_scan(k, ems, ltab, ltab[-1], True)
        return not exceeded

    for extra in range(0, len(others) + 1):
        found = None
        unique = True
        for combo in combinations(others, extra):
            x = y | mask_of(combo)
            if induced_pc(x):
                if found is None:
                    found = x
                else:
                    unique = False
                    break
        if found is not None:
            return MinPcResult(found, unique)
        _ = ny  # sizes below |Y| are impossible; extras start at 0
    raise Disconnected("no partition-connected vertex set contains the targets")


def e_star_table(graph, l, *, trust_flags=None):
    """For every vertex set S (indexed by mask): the maximum number of
    edges inside S over all bases."""
    best = np.full(1 << graph.n, -1, dtype=np.int64)
    for basis in _enumerate_bases(graph, l, trust_flags=trust_flags):
        ems = _kernels.as_mask_array(
            graph.edge_masks[i] for i in basis.indices()
        )
        counts = _kernels.count_inside(graph.n, ems)
        np.maximum(best, counts, out=best)
    if best[0] < 0:
        raise Disconnected("host has no basis")
    return best


def e_star(graph, l, vertex_set, *, trust_flags=None):
    """Maximum edge count inside the vertex set over every basis."""
    s = as_mask(vertex_set, graph.n)
    return int(e_star_table(graph, l, trust_flags=trust_flags)[s])
