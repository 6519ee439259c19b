##############################################################################
#
# Copyright (c) 2026 Zope Foundation and Contributors.
# All Rights Reserved.
#
# This software is subject to the provisions of the Zope Public License,
# Version 2.1 (ZPL).  A copy of the ZPL should accompany this distribution.
# THIS SOFTWARE IS PROVIDED "AS IS" AND ANY AND ALL EXPRESS OR IMPLIED
# WARRANTIES ARE DISCLAIMED, INCLUDING, BUT NOT LIMITED TO, THE IMPLIED
# WARRANTIES OF TITLE, MERCHANTABILITY, AGAINST INFRINGEMENT, AND FITNESS
# FOR A PARTICULAR PURPOSE.
#
##############################################################################
"""Exact reference solvers producing gold answers

Every solver takes a `zope.graphsolver.graph.Graph` and returns an
`OracleAnswer`. Results are deterministic: neighbors are always visited
in ascending order and ties go to the lowest node index.
"""
import logging
import time
from fractions import Fraction

import networkx as nx
import numpy as np
from networkx.algorithms import isomorphism
from zope.interface import implementer

from zope.graphsolver.interfaces import DisconnectedGraph
from zope.graphsolver.interfaces import IOracleAnswer
from zope.graphsolver.interfaces import OracleError
from zope.graphsolver.interfaces import PreconditionError
from zope.graphsolver.interfaces import QueryError
from zope.graphsolver.interfaces import SearchBoundExceeded
from zope.graphsolver.interfaces import SearchTimeout


logger = logging.getLogger(__name__)

SUBGRAPH_BOUND = 16
SET_SEARCH_BOUND = 40
MCS_BOUND = 10
TSP_BOUND = 20

#: Default time budget of the branch-and-bound searches, in seconds.
SEARCH_BUDGET = 60.0


@implementer(IOracleAnswer)
class OracleAnswer:

    def __init__(self, kind, value, witness=None):
        self.kind = kind
        self.value = value
        self.witness = witness

    def __eq__(self, other):
        if not isinstance(other, OracleAnswer):
            return NotImplemented
        return (self.kind, self.value, self.witness) == (
            other.kind, other.value, other.witness)

    def __repr__(self):
        return (f'OracleAnswer({self.kind!r}, {self.value!r}, '
                f'{self.witness!r})')


def _require_undirected(g, what):
    if g.directed:
        raise QueryError(f'{what} is defined on undirected graphs only')


def _require_directed(g, what):
    if not g.directed:
        raise QueryError(f'{what} is defined on directed graphs only')


def _adjacent(g, u):
    """Nodes adjacent to u ignoring edge direction."""
    if not g.directed:
        return set(g.neighbors(u))
    return set(g.neighbors(u)) | set(g.predecessors(u))


def local_query(g, kind, u=None, v=None):
    """Answer a question about one node or one node pair.

    Kinds are ``node_count``, ``edge_count``, ``edge_existence``,
    ``degree``, ``neighbors``, ``connected_nodes``, ``predecessors``,
    ``common_neighbors``, ``jaccard`` and ``triangle_count``.
    """
    if kind == 'node_count':
        return OracleAnswer('integer', g.node_count)
    if kind == 'edge_count':
        return OracleAnswer('integer', g.edge_count)
    if kind == 'triangle_count':
        simple = nx.Graph(g.to_networkx())
        simple.remove_edges_from(list(nx.selfloop_edges(simple)))
        triangles = sum(nx.triangles(simple).values()) // 3
        return OracleAnswer('integer', triangles)
    g.check_node(u)
    if kind == 'edge_existence':
        g.check_node(v)
        return OracleAnswer('boolean', g.has_edge(u, v))
    if kind == 'degree':
        degree = sum(1 for a, b, _ in g.edges if u in (a, b))
        return OracleAnswer('integer', degree)
    if kind == 'neighbors':
        return OracleAnswer('node_set', tuple(g.neighbors(u)))
    if kind == 'connected_nodes':
        return OracleAnswer('node_set', tuple(sorted(_adjacent(g, u))))
    if kind == 'predecessors':
        _require_directed(g, 'predecessors')
        return OracleAnswer('node_set', tuple(g.predecessors(u)))
    if kind in ('common_neighbors', 'jaccard'):
        g.check_node(v)
        first, second = _adjacent(g, u), _adjacent(g, v)
        common = tuple(sorted(first & second))
        if kind == 'common_neighbors':
            return OracleAnswer('node_set', common)
        union = first | second
        value = Fraction(len(common), len(union)) if union else Fraction(0)
        return OracleAnswer('value_with_witness', value,
                            f'{float(value):.6f}')
    raise QueryError(f'unknown local query {kind!r}')


def connectivity_query(g, kind, u=None, v=None):
    """Answer a question about reachability and traversals.

    Kinds are ``connected`` (is v reachable from u), ``component_count``,
    ``components``, ``diameter``, ``dfs_order`` and ``bfs_order``.
    Components of directed graphs are the weakly connected ones.
    """
    graph = g.to_networkx()
    if kind == 'connected':
        g.check_node(u)
        g.check_node(v)
        return OracleAnswer('boolean', nx.has_path(graph, u, v))
    if kind in ('component_count', 'components'):
        if g.directed:
            parts = nx.weakly_connected_components(graph)
        else:
            parts = nx.connected_components(graph)
        parts = sorted(tuple(sorted(part)) for part in parts)
        if kind == 'component_count':
            return OracleAnswer('integer', len(parts), tuple(parts))
        return OracleAnswer('node_set', tuple(parts))
    if kind == 'diameter':
        _require_undirected(g, 'diameter')
        if g.node_count == 0:
            raise PreconditionError('diameter of an empty graph')
        if not nx.is_connected(graph):
            raise DisconnectedGraph('diameter of a disconnected graph')
        return OracleAnswer('integer', nx.diameter(graph))
    if kind == 'dfs_order':
        g.check_node(u)
        order = nx.dfs_preorder_nodes(graph, u, sort_neighbors=sorted)
        return OracleAnswer('node_sequence', tuple(order))
    if kind == 'bfs_order':
        g.check_node(u)
        edges = nx.bfs_edges(graph, u, sort_neighbors=sorted)
        return OracleAnswer('node_sequence',
                            (u,) + tuple(child for _, child in edges))
    raise QueryError(f'unknown connectivity query {kind!r}')


def detect_cycle(g):
    """Is there a cycle? The witness lists the nodes of one.

    Undirected cycles have at least three nodes, so self-loops only count
    on directed graphs.
    """
    graph = g.to_networkx()
    if not g.directed:
        graph.remove_edges_from(list(nx.selfloop_edges(graph)))
    try:
        edges = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        return OracleAnswer('boolean', False)
    return OracleAnswer('boolean', True, tuple(edge[0] for edge in edges))


def topological_order(g):
    """The lexicographically smallest topological order, None if cyclic."""
    _require_directed(g, 'topological sort')
    try:
        order = tuple(nx.lexicographical_topological_sort(g.to_networkx()))
    except nx.NetworkXUnfeasible:
        return OracleAnswer('node_sequence', None)
    return OracleAnswer('node_sequence', order)


def shortest_path(g, s, t):
    """Weight of a shortest s-t path, -1 when t is unreachable."""
    g.check_node(s)
    g.check_node(t)
    if any(w is not None and w < 0 for _, _, w in g.edges):
        raise OracleError('shortest path with negative edge weights')
    try:
        distance, path = nx.single_source_dijkstra(
            g.to_networkx(), s, t, weight='weight')
    except nx.NetworkXNoPath:
        return OracleAnswer('value_with_witness', -1)
    return OracleAnswer('value_with_witness', distance, tuple(path))


def max_flow(g, s, t):
    """Maximum s-t flow. Undirected edges carry their capacity both ways."""
    g.check_node(s)
    g.check_node(t)
    if s == t:
        raise QueryError('flow source and sink are the same node')
    network = nx.DiGraph()
    network.add_nodes_from(range(g.node_count))
    for u, v, w in g.edges:
        capacity = 1 if w is None else w
        network.add_edge(u, v, capacity=capacity)
        if not g.directed:
            network.add_edge(v, u, capacity=capacity)
    value = nx.maximum_flow_value(network, s, t, capacity='capacity')
    return OracleAnswer('integer', value)


def bipartite(g):
    """Is the graph two-colorable? The witness is its matching number."""
    graph = nx.Graph(g.to_networkx())
    if not nx.is_bipartite(graph):
        return OracleAnswer('boolean', False)
    return OracleAnswer('boolean', True, bipartite_matching(g).value)


def bipartite_matching(g):
    """Size of a maximum matching of a bipartite graph."""
    graph = nx.Graph(g.to_networkx())
    if not nx.is_bipartite(graph):
        raise PreconditionError('matching requires a bipartite graph')
    coloring = nx.bipartite.color(graph)
    top = {node for node, color in coloring.items() if color == 0}
    matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=top)
    pairs = tuple(sorted((u, v) for u, v in matching.items() if u in top))
    return OracleAnswer('integer', len(pairs), pairs)


def hamilton_path(g):
    """Is there a path visiting every node exactly once?

    Starts are tried in ascending order and extended through ascending
    neighbors. A failed search resumes with the next candidate instead of
    giving up; failed (visited set, position) states are remembered.
    """
    _require_undirected(g, 'hamiltonian path')
    n = g.node_count
    if n == 0:
        return OracleAnswer('boolean', True, ())
    if not nx.is_connected(g.to_networkx()):
        return OracleAnswer('boolean', False)
    full = (1 << n) - 1
    failed = set()

    def extend(path, visited):
        if visited == full:
            return True
        last = path[-1]
        if (visited, last) in failed:
            return False
        for nxt in g.neighbors(last):
            if not visited >> nxt & 1:
                path.append(nxt)
                if extend(path, visited | 1 << nxt):
                    return True
                path.pop()
        failed.add((visited, last))
        return False

    for start in range(n):
        path = [start]
        if extend(path, 1 << start):
            return OracleAnswer('boolean', True, tuple(path))
    return OracleAnswer('boolean', False)


def subgraph_match(pattern, host, mode='induced'):
    """Does `pattern` embed in `host`? The witness maps pattern to host.

    In ``induced`` mode non-edges must map to non-edges too; in
    ``monomorphism`` mode only edges have to be preserved.
    """
    if mode not in ('induced', 'monomorphism'):
        raise QueryError(f'unknown subgraph matching mode {mode!r}')
    if host.directed != pattern.directed:
        raise QueryError('host and pattern differ in direction')
    if host.node_count > SUBGRAPH_BOUND:
        raise SearchBoundExceeded('subgraph matching', SUBGRAPH_BOUND,
                                  host.node_count)
    if pattern.node_count > host.node_count:
        return OracleAnswer('boolean', False)
    if host.directed:
        matcher = isomorphism.DiGraphMatcher(host.to_networkx(),
                                             pattern.to_networkx())
    else:
        matcher = isomorphism.GraphMatcher(host.to_networkx(),
                                           pattern.to_networkx())
    if mode == 'induced':
        mappings = matcher.subgraph_isomorphisms_iter()
    else:
        mappings = matcher.subgraph_monomorphisms_iter()
    for mapping in mappings:
        witness = tuple(sorted((p, h) for h, p in mapping.items()))
        return OracleAnswer('boolean', True, witness)
    return OracleAnswer('boolean', False)


def pagerank(g, damping=0.85, iterations=3):
    """Node with the highest score after synchronous power iterations.

    Scores start uniform. Nodes without out-edges spread their score
    evenly over all nodes. Ties go to the lowest index. The damping
    factor lies strictly between 0 and 1; at least one iteration runs.
    """
    _require_directed(g, 'pagerank')
    n = g.node_count
    if n == 0:
        raise PreconditionError('pagerank of an empty graph')
    if not 0 < damping < 1 or iterations < 1:
        raise PreconditionError('bad pagerank parameters')
    sources = np.array([u for u, _, _ in g.edges], dtype=np.intp)
    targets = np.array([v for _, v, _ in g.edges], dtype=np.intp)
    out_degree = np.bincount(sources, minlength=n).astype(float)
    dangling = out_degree == 0
    scores = np.full(n, 1.0 / n)
    for _ in range(iterations):
        share = np.zeros(n)
        share[~dangling] = scores[~dangling] / out_degree[~dangling]
        incoming = np.bincount(targets, weights=share[sources], minlength=n)
        scores = ((1 - damping) / n + damping * incoming
                  + damping * scores[dangling].sum() / n)
    return OracleAnswer('node', int(np.argmax(scores)), tuple(scores))


def mst_weight(g):
    """Total weight of a minimum spanning tree."""
    _require_undirected(g, 'minimum spanning tree')
    if not g.weighted and g.edge_count:
        raise QueryError('minimum spanning tree needs edge weights')
    graph = g.to_networkx()
    if g.node_count == 0 or not nx.is_connected(graph):
        raise DisconnectedGraph('spanning tree of a disconnected graph')
    tree = nx.minimum_spanning_tree(graph, weight='weight',
                                    algorithm='kruskal')
    witness = tuple(sorted((min(u, v), max(u, v))
                           for u, v in tree.edges()))
    return OracleAnswer('integer',
                        int(tree.size(weight='weight')), witness)


def _adjacency_bits(g, complement=False):
    bits = [0] * g.node_count
    for u, v, _ in g.edges:
        if u != v:
            bits[u] |= 1 << v
            bits[v] |= 1 << u
    if complement:
        full = (1 << g.node_count) - 1
        bits = [~b & full & ~(1 << u) for u, b in enumerate(bits)]
    return bits


def _lowest(bits):
    return (bits & -bits).bit_length() - 1


def _max_clique_bits(adjacency, candidates, deadline, what, budget):
    """Branch and bound over bitsets with a greedy coloring bound."""
    best = [0, 0]  # size, members

    def color_order(candidates):
        order = []
        color = 0
        uncolored = candidates
        while uncolored:
            color += 1
            available = uncolored
            while available:
                v = _lowest(available)
                available &= ~(1 << v) & ~adjacency[v]
                uncolored &= ~(1 << v)
                order.append((v, color))
        return order

    def expand(members, size, candidates):
        if time.monotonic() > deadline:
            raise SearchTimeout(what, budget)
        for v, color in reversed(color_order(candidates)):
            if size + color <= best[0]:
                return
            chosen = members | 1 << v
            rest = candidates & adjacency[v]
            if rest:
                expand(chosen, size + 1, rest)
            elif size + 1 > best[0]:
                best[0], best[1] = size + 1, chosen
            candidates &= ~(1 << v)

    if candidates:
        expand(0, 0, candidates)
    return tuple(v for v in range(len(adjacency)) if best[1] >> v & 1)


def _set_search(g, complement, what, budget):
    _require_undirected(g, what)
    if g.node_count > SET_SEARCH_BOUND:
        raise SearchBoundExceeded(what, SET_SEARCH_BOUND, g.node_count)
    candidates = (1 << g.node_count) - 1
    if complement:
        # a node with a self-loop is never independent
        for u, v, _ in g.edges:
            if u == v:
                candidates &= ~(1 << u)
    deadline = time.monotonic() + budget
    return _max_clique_bits(_adjacency_bits(g, complement), candidates,
                            deadline, what, budget)


def max_clique(g, budget=SEARCH_BUDGET):
    members = _set_search(g, False, 'maximum clique', budget)
    return OracleAnswer('value_with_witness', len(members), members)


def exact_mis(g, budget=SEARCH_BUDGET):
    """Maximum independent set, as a maximum clique of the complement."""
    members = _set_search(g, True, 'maximum independent set', budget)
    return OracleAnswer('value_with_witness', len(members), members)


def exact_mvc(g, budget=SEARCH_BUDGET):
    """Minimum vertex cover, the complement of a maximum independent set.

    Nodes with self-loops are always in the cover.
    """
    independent = set(_set_search(g, True, 'minimum vertex cover', budget))
    cover = tuple(v for v in range(g.node_count) if v not in independent)
    return OracleAnswer('value_with_witness', len(cover), cover)


def max_common_subgraph(g1, g2):
    """Size of a maximum common induced subgraph of two undirected graphs.

    Label classes split the unmatched nodes by their adjacency to the
    nodes matched so far; a pair can only be matched inside one class,
    which bounds the search. The witness maps nodes of the smaller graph.
    """
    _require_undirected(g1, 'maximum common subgraph')
    _require_undirected(g2, 'maximum common subgraph')
    swapped = g1.node_count > g2.node_count
    small, large = (g2, g1) if swapped else (g1, g2)
    if small.node_count > MCS_BOUND:
        raise SearchBoundExceeded('maximum common subgraph', MCS_BOUND,
                                  small.node_count)
    adj_small = _adjacency_bits(small)
    adj_large = _adjacency_bits(large)
    best = []
    mapping = []

    def search(classes):
        nonlocal best
        if len(mapping) > len(best):
            best = list(mapping)
        bound = len(mapping) + sum(min(len(a), len(b)) for a, b in classes)
        if bound <= len(best) or not classes:
            return
        index = min(range(len(classes)),
                    key=lambda i: (max(len(classes[i][0]),
                                       len(classes[i][1])), i))
        left, right = classes[index]
        v = left[0]
        for w in right:
            refined = []
            for a, b in classes:
                a = [x for x in a if x != v]
                b = [y for y in b if y != w]
                for connected in (True, False):
                    a_part = [x for x in a
                              if bool(adj_small[v] >> x & 1) == connected]
                    b_part = [y for y in b
                              if bool(adj_large[w] >> y & 1) == connected]
                    if a_part and b_part:
                        refined.append((a_part, b_part))
            mapping.append((v, w))
            search(refined)
            mapping.pop()
        remaining = list(classes)
        if len(left) > 1:
            remaining[index] = (left[1:], right)
        else:
            del remaining[index]
        search(remaining)

    if small.node_count and large.node_count:
        search([(list(range(small.node_count)),
                 list(range(large.node_count)))])
    witness = tuple(sorted((w, v) if swapped else (v, w) for v, w in best))
    return OracleAnswer('value_with_witness', len(best), witness)


def tsp_held_karp(g):
    """Cost of a cheapest tour through every node, -1 if there is none.

    The tour starts and ends at node 0. Costs are computed layer by layer
    over subsets of the other nodes, one numpy pass per end node. The
    witness is the tour without the closing return to 0.
    """
    _require_undirected(g, 'travelling salesman')
    n = g.node_count
    if n == 0:
        raise PreconditionError('tour of an empty graph')
    if n > TSP_BOUND:
        raise SearchBoundExceeded('travelling salesman', TSP_BOUND, n)
    dist = np.full((n, n), np.inf)
    for u, v, w in g.edges:
        weight = 1 if w is None else w
        dist[u, v] = min(dist[u, v], weight)
        dist[v, u] = min(dist[v, u], weight)
    if not nx.is_connected(g.to_networkx()):
        return OracleAnswer('value_with_witness', -1)
    m = n - 1
    if m == 0:
        # a single node tour needs a self-loop
        if np.isinf(dist[0, 0]):
            return OracleAnswer('value_with_witness', -1)
        return OracleAnswer('value_with_witness', int(dist[0, 0]), (0,))
    # Subset bit i stands for node i + 1.
    size = 1 << m
    inner = dist[1:, 1:]
    cost = np.full((size, m), np.inf)
    parent = np.full((size, m), -1, dtype=np.int8)
    for v in range(m):
        cost[1 << v, v] = dist[0, v + 1]
    masks = np.arange(size)
    popcount = np.zeros(size, dtype=np.int8)
    for bit in range(m):
        popcount += (masks >> bit) & 1
    for layer in range(2, m + 1):
        members = masks[popcount == layer]
        for v in range(m):
            ending = members[(members >> v) & 1 == 1]
            previous = ending ^ (1 << v)
            candidates = cost[previous] + inner[:, v]
            choice = np.argmin(candidates, axis=1)
            cost[ending, v] = candidates[np.arange(len(ending)), choice]
            parent[ending, v] = choice
    totals = cost[size - 1] + dist[1:, 0]
    last = int(np.argmin(totals))
    if np.isinf(totals[last]):
        return OracleAnswer('value_with_witness', -1)
    tour = []
    subset, node = size - 1, last
    while node >= 0:
        tour.append(node + 1)
        subset, node = subset ^ (1 << node), int(parent[subset, node])
    tour.append(0)
    tour.reverse()
    logger.debug('Held-Karp over %d nodes: cost %s', n, totals[last])
    return OracleAnswer('value_with_witness', int(totals[last]), tuple(tour))
