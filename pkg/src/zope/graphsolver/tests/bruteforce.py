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
"""Exhaustive reference solvers for small graphs.

Nothing here uses the oracles or networkx; answers come from enumerating
subsets, permutations and mappings, or from exact rational arithmetic.
"""
import itertools
from fractions import Fraction


INFINITY = float('inf')


def adjacency(g):
    """Undirected adjacency sets, ignoring self-loops."""
    adj = [set() for _ in range(g.node_count)]
    for u, v, _ in g.edges:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    return adj


def reachable(g, s):
    seen = {s}
    stack = [s]
    while stack:
        u = stack.pop()
        for v in g.neighbors(u):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def components(g):
    adj = adjacency(g)
    parts = []
    left = set(range(g.node_count))
    while left:
        start = min(left)
        part = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u] - part:
                part.add(v)
                stack.append(v)
        parts.append(tuple(sorted(part)))
        left -= part
    return sorted(parts)


def shortest_distance(g, s, t):
    """Bellman-Ford style relaxation, -1 when unreachable."""
    dist = [INFINITY] * g.node_count
    dist[s] = 0
    for _ in range(g.node_count):
        for u, v, _w in g.edges:
            w = g.weight(u, v)
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
            if not g.directed and dist[v] + w < dist[u]:
                dist[u] = dist[v] + w
    return -1 if dist[t] == INFINITY else dist[t]


def min_cut(g, s, t):
    """Smallest total capacity of edges leaving a set holding s but not t.

    Undirected edges count in both directions, so any crossing edge cuts.
    """
    others = [v for v in range(g.node_count) if v not in (s, t)]
    best = INFINITY
    for size in range(len(others) + 1):
        for chosen in itertools.combinations(others, size):
            side = {s, *chosen}
            cut = 0
            for u, v, _w in g.edges:
                w = g.weight(u, v)
                if u in side and v not in side:
                    cut += w
                elif not g.directed and v in side and u not in side:
                    cut += w
            best = min(best, cut)
    return best


def mst_weight(g):
    """Cheapest spanning edge subset of size n - 1 that connects all."""
    edges = [(u, v, g.weight(u, v)) for u, v, _ in g.edges if u != v]
    best = INFINITY
    for chosen in itertools.combinations(edges, g.node_count - 1):
        parent = list(range(g.node_count))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        joined = 0
        for u, v, _w in chosen:
            a, b = find(u), find(v)
            if a != b:
                parent[a] = b
                joined += 1
        if joined == g.node_count - 1:
            best = min(best, sum(w for _, _, w in chosen))
    return best


def _subsets_by_size(n, descending=True):
    sizes = range(n, -1, -1) if descending else range(n + 1)
    for size in sizes:
        for chosen in itertools.combinations(range(n), size):
            yield chosen


def max_clique_size(g):
    adj = adjacency(g)
    for chosen in _subsets_by_size(g.node_count):
        if all(b in adj[a] for a, b in itertools.combinations(chosen, 2)):
            return len(chosen)


def max_independent_set_size(g):
    adj = adjacency(g)
    loops = {u for u, v, _ in g.edges if u == v}
    for chosen in _subsets_by_size(g.node_count):
        if loops & set(chosen):
            continue
        if all(b not in adj[a] for a, b in itertools.combinations(chosen, 2)):
            return len(chosen)


def min_vertex_cover_size(g):
    for chosen in _subsets_by_size(g.node_count, descending=False):
        cover = set(chosen)
        if all(u in cover or v in cover for u, v, _ in g.edges):
            return len(chosen)


def is_independent(g, nodes):
    nodes = set(nodes)
    return all(not (u in nodes and v in nodes) for u, v, _ in g.edges)


def is_clique(g, nodes):
    adj = adjacency(g)
    return all(b in adj[a] for a, b in itertools.combinations(nodes, 2))


def is_cover(g, nodes):
    nodes = set(nodes)
    return all(u in nodes or v in nodes for u, v, _ in g.edges)


def tour_cost(g, tour):
    total = 0
    for a, b in zip(tour, tour[1:] + tour[:1]):
        if not g.has_edge(a, b):
            return INFINITY
        total += g.weight(a, b)
    return total


def tsp_cost(g):
    """Cheapest tour from node 0 over all permutations, -1 if none."""
    n = g.node_count
    if n == 1:
        return g.weight(0, 0) if g.has_edge(0, 0) else -1
    best = INFINITY
    for rest in itertools.permutations(range(1, n)):
        best = min(best, tour_cost(g, (0,) + rest))
    return -1 if best == INFINITY else best


def has_hamilton_path(g):
    n = g.node_count
    if n == 0:
        return True
    for order in itertools.permutations(range(n)):
        if all(g.has_edge(a, b) for a, b in zip(order, order[1:])):
            return True
    return False


def is_bipartite(g):
    adj = adjacency(g)
    if any(u == v for u, v, _ in g.edges):
        return False
    for sides in itertools.product((0, 1), repeat=g.node_count):
        if all(sides[u] != sides[v] for u in range(g.node_count)
               for v in adj[u]):
            return True
    return False


def max_matching_size(g):
    edges = [(u, v) for u, v, _ in g.edges if u != v]
    for size in range(len(edges), -1, -1):
        for chosen in itertools.combinations(edges, size):
            ends = [x for edge in chosen for x in edge]
            if len(set(ends)) == len(ends):
                return size
    return 0


def embeds(pattern, host, induced=True):
    """Is there an injective map of pattern nodes keeping (non-)edges?"""
    for image in itertools.permutations(range(host.node_count),
                                        pattern.node_count):
        ok = True
        for a in range(pattern.node_count):
            for b in range(pattern.node_count):
                if a == b and not pattern.directed:
                    continue
                if not pattern.directed and b < a:
                    continue
                edge = pattern.has_edge(a, b)
                mapped = host.has_edge(image[a], image[b])
                if edge and not mapped or induced and mapped and not edge:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def induced_edges(g, nodes):
    return {(a, b) for a, b in itertools.combinations(nodes, 2)
            if g.has_edge(a, b)}


def max_common_subgraph_size(g1, g2):
    """Largest k such that some k nodes of each induce isomorphic graphs."""
    for k in range(min(g1.node_count, g2.node_count), 0, -1):
        for left in itertools.combinations(range(g1.node_count), k):
            edges = induced_edges(g1, left)
            for right in itertools.permutations(range(g2.node_count), k):
                image = dict(zip(left, right))
                if all(g2.has_edge(image[a], image[b]) == ((a, b) in edges)
                       for a, b in itertools.combinations(left, 2)):
                    return k
    return 0


def has_cycle(g):
    if g.directed:
        state = [0] * g.node_count

        def visit(u):
            state[u] = 1
            for v in g.neighbors(u):
                if state[v] == 1 or state[v] == 0 and visit(v):
                    return True
            state[u] = 2
            return False

        return any(state[u] == 0 and visit(u) for u in range(g.node_count))
    simple = {(u, v) for u, v, _ in g.edges if u != v}
    return len(simple) > g.node_count - len(components(g))


def is_common_subgraph_map(g1, g2, pairs):
    """Do the (g1 node, g2 node) pairs map an induced subgraph exactly?"""
    left = [a for a, _ in pairs]
    right = [b for _, b in pairs]
    if len(set(left)) != len(left) or len(set(right)) != len(right):
        return False
    return all(g1.has_edge(a, c) == g2.has_edge(b, d)
               for (a, b), (c, d) in itertools.combinations(pairs, 2))


def pagerank_scores(g, damping, iterations):
    """Exact scores after each synchronous iteration, starting uniform."""
    n = g.node_count
    out = [[v for u, v, _ in g.edges if u == x] for x in range(n)]
    scores = [Fraction(1, n)] * n
    history = []
    for _ in range(iterations):
        spread = sum(scores[x] for x in range(n) if not out[x]) / n
        incoming = [Fraction(0)] * n
        for x in range(n):
            for v in out[x]:
                incoming[v] += scores[x] / len(out[x])
        scores = [(1 - damping) / n + damping * (incoming[v] + spread)
                  for v in range(n)]
        history.append(scores)
    return history
