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
"""Benchmark task families

Each task spec knows how to sample a graph, phrase a question about it the
way graph reasoning benchmarks do, compute the gold answer with an oracle
and render the canonical standard input for solvers:

    >>> import random
    >>> from zope.graphsolver.tasks import get_task
    >>> spec = get_task('node_count')
    >>> problem = spec.build(spec.sample_graph(random.Random(1), 4, 0.5),
    ...                      random.Random(1))
    >>> print(problem['gold'])
    4
    >>> problem['standard_input'].splitlines()[0]
    '4 3'
"""
__docformat__ = 'restructuredtext'

import itertools
import re

from zope.component import queryUtility
from zope.interface import implementer

from zope.graphsolver import oracle
from zope.graphsolver.graph import Graph
from zope.graphsolver.graph import describe_graph
from zope.graphsolver.graph import parse_graph_text
from zope.graphsolver.graph import render_standard_input
from zope.graphsolver.interfaces import ConfigurationError
from zope.graphsolver.interfaces import GraphParseError
from zope.graphsolver.interfaces import ITaskSpec
from zope.graphsolver.interfaces import PreconditionError


MAX_WEIGHT = 100

_explanations = {
    (False, False): 'In an undirected graph, (i,j) means that node i and'
                    ' node j are connected with an undirected edge.',
    (False, True): 'In an undirected graph, (i,j,k) means that node i and'
                   ' node j are connected with an undirected edge with'
                   ' weight k.',
    (True, False): 'In a directed graph, (i->j) means that there is a'
                   ' directed edge from node i to node j.',
    (True, True): 'In a directed graph, (i->j,k) means that there is a'
                  ' directed edge from node i to node j with {weight} k.',
}

_question_node_re = re.compile(r'\bnode (\S+?)(?=[\s,.?]|$)')


def edge_budget(n, density):
    """Number of edges of a graph of density p on n nodes.

    >>> edge_budget(50, 0.3)
    367
    """
    return int(density * n * (n - 1) / 2)


def random_graph(rng, n, density, directed=False, weighted=False,
                 max_weight=MAX_WEIGHT, pairs=None):
    """G(n, m) graph with m edges drawn without replacement.

    `pairs` restricts the candidate node pairs; otherwise every unordered
    pair (ordered for directed graphs) is a candidate.
    """
    if n < 2:
        raise PreconditionError(f'graphs need at least 2 nodes, not {n}')
    if not 0 < density <= 1:
        raise PreconditionError(f'density {density} is not in (0, 1]')
    if max_weight < 1:
        raise PreconditionError('max weight must be positive')
    if pairs is None:
        if directed:
            pairs = list(itertools.permutations(range(n), 2))
        else:
            pairs = list(itertools.combinations(range(n), 2))
    m = min(edge_budget(n, density), len(pairs))
    chosen = sorted(rng.sample(pairs, m))
    if weighted:
        edges = [(u, v, rng.randint(1, max_weight)) for u, v in chosen]
    else:
        edges = chosen
    return Graph(n, edges, directed=directed)


@implementer(ITaskSpec)
class TaskSpec:
    """A task family over a single graph.

    `question` is a format string whose positional fields are the query
    node names followed by the `extra` values. `answer` maps the graph and
    the query node indices to the gold answer text.
    """

    checker_reference = None
    max_nodes = None

    def __init__(self, task_id, checker_kind, summary, question, answer,
                 directed=False, weighted=False, query_nodes=0, extra=(),
                 nodes=10, density=0.3, weight_name='weight',
                 connected=False, max_nodes=None, reference=None,
                 instruction=None):
        self.task_id = task_id
        self.checker_kind = checker_kind
        self.summary = summary
        self.question = question
        self.answer = answer
        self.directed = directed
        self.weighted = weighted
        self.query_nodes = query_nodes
        self.extra = tuple(extra)
        self.nodes = nodes
        self.density = density
        self.weight_name = weight_name
        self.connected = connected
        self.instruction = instruction
        if max_nodes is not None:
            self.max_nodes = max_nodes
        if reference is not None:
            self.checker_reference = reference

    def __repr__(self):
        return f'<{self.__class__.__name__} {self.task_id}>'

    @property
    def preamble(self):
        """Task summary, tuple notation and instruction sentences."""
        explanation = _explanations[(self.directed, self.weighted)].format(
            weight=self.weight_name)
        parts = [self.summary, explanation]
        if self.instruction:
            parts.append(self.instruction)
        return ' '.join(parts)

    def sample_graph(self, rng, n, density, max_weight=MAX_WEIGHT):
        # resample until connected where the question needs it
        for _ in range(1000):
            g = random_graph(rng, n, density, self.directed, self.weighted,
                             max_weight)
            if not self.connected or oracle.connectivity_query(
                    g, 'component_count').value == 1:
                return g
        raise PreconditionError(
            f'no connected graph with {n} nodes at density {density}')

    def choose_query(self, g, rng):
        return tuple(rng.sample(range(g.node_count), self.query_nodes))

    def render_text(self, g, query):
        names = [g.node_name(q) for q in query] + list(self.extra)
        return (f'{self.preamble} Q: {describe_graph(g)} '
                f'{self.question.format(*names)}')

    def build(self, g, rng):
        query = self.choose_query(g, rng)
        return {
            'text': self.render_text(g, query),
            'gold': self.answer(g, query),
            'standard_input': render_standard_input(g, query, self.extra),
            'query': [g.node_name(q) for q in query],
        }

    def parse_problem(self, problem_text, query=None):
        """Recover the graph and query nodes from a problem text.

        Query node tokens come from `query` when given, else from the
        ``node X`` mentions after the edge list.
        """
        g = parse_graph_text(problem_text, self.directed, self.weighted)
        if query is None:
            tail = problem_text[problem_text.rfind(')') + 1:]
            query = _question_node_re.findall(tail)[:self.query_nodes]
        index = {g.node_name(i): i for i in range(g.node_count)}
        try:
            return g, tuple(index[str(token)] for token in query)
        except KeyError as e:
            raise GraphParseError(f'query node {e} is not in the graph')

    def reference(self, instance):
        """What validity-checking answer checkers need for an instance."""
        query = (instance.meta or {}).get('query')
        g, nodes = self.parse_problem(instance.problem_text, query)
        data = {'graph': g}
        if self.checker_reference is not None:
            data.update(self.checker_reference(nodes))
        return data


@implementer(ITaskSpec)
class PairTaskSpec(TaskSpec):
    """A task family comparing a graph G with a smaller graph G'."""

    separator = "The graph G':"

    def __init__(self, task_id, checker_kind, summary, question, answer,
                 pattern_nodes=4, **kw):
        super().__init__(task_id, checker_kind, summary, question, answer,
                         **kw)
        self.pattern_nodes = pattern_nodes

    def sample_graph(self, rng, n, density, max_weight=MAX_WEIGHT):
        host = random_graph(rng, n, density, self.directed)
        k = min(self.pattern_nodes, n)
        if rng.random() < 0.5:
            # an induced subgraph of the host, relabelled
            chosen = rng.sample(range(n), k)
            position = {node: i for i, node in enumerate(chosen)}
            edges = [(position[u], position[v]) for u, v, _ in host.edges
                     if u in position and v in position]
            pattern = Graph(k, edges, directed=self.directed)
        else:
            pattern = random_graph(rng, k, density, self.directed)
        return host, pattern

    def build(self, graphs, rng):
        host, pattern = graphs
        text = (f'{self.preamble} Q: The graph G: '
                f'{describe_graph(host)} {self.separator} '
                f'{describe_graph(pattern)} {self.question}')
        return {
            'text': text,
            'gold': self.answer(host, pattern),
            'standard_input': (render_standard_input(host)
                               + render_standard_input(pattern)),
            'query': [],
        }

    def parse_problem(self, problem_text, query=None):
        head, _, tail = problem_text.partition(self.separator)
        if not tail:
            raise GraphParseError(f'no {self.separator!r} in the problem')
        return (parse_graph_text(head, self.directed, self.weighted),
                parse_graph_text(tail, self.directed, self.weighted)), ()

    def reference(self, instance):
        graphs, _ = self.parse_problem(instance.problem_text)
        return {'graph': graphs[0], 'pattern': graphs[1]}


class DagTaskSpec(TaskSpec):
    """Samples acyclic graphs whose node order is shuffled."""

    def sample_graph(self, rng, n, density, max_weight=MAX_WEIGHT):
        order = list(range(n))
        rng.shuffle(order)
        pairs = [(order[i], order[j])
                 for i, j in itertools.combinations(range(n), 2)]
        return random_graph(rng, n, density, True, self.weighted,
                            max_weight, pairs=pairs)


class BipartiteTaskSpec(TaskSpec):
    """Samples bipartite graphs, or any graph when `mixed` is set."""

    def __init__(self, *args, mixed=False, **kw):
        super().__init__(*args, **kw)
        self.mixed = mixed

    def sample_graph(self, rng, n, density, max_weight=MAX_WEIGHT):
        if self.mixed and rng.random() < 0.5:
            return super().sample_graph(rng, n, density, max_weight)
        left = set(rng.sample(range(n), n // 2))
        pairs = [(u, v) for u, v in itertools.combinations(range(n), 2)
                 if (u in left) != (v in left)]
        return random_graph(rng, n, density, pairs=pairs)


class CompleteTaskSpec(TaskSpec):
    """Samples complete weighted graphs whatever the density.

    The only query node is the first node, where tours start.
    """

    def choose_query(self, g, rng):
        return (0,)

    def sample_graph(self, rng, n, density, max_weight=MAX_WEIGHT):
        return random_graph(rng, n, 1.0, self.directed, True, max_weight)


class EdgeQueryTaskSpec(TaskSpec):
    """Asks about an existing edge half of the time."""

    def choose_query(self, g, rng):
        if g.edge_count and rng.random() < 0.5:
            u, v, _ = rng.choice(g.edges)
            return (u, v) if rng.random() < 0.5 or g.directed else (v, u)
        return super().choose_query(g, rng)


def _names(g, nodes):
    return ' '.join(g.node_name(u) for u in nodes)


def _yes_no(flag):
    return 'Yes' if flag else 'No'


def _local(kind):
    def answer(g, query):
        result = oracle.local_query(g, kind, *query)
        if result.kind == 'node_set':
            return _names(g, result.value)
        if result.kind == 'boolean':
            return _yes_no(result.value)
        return str(result.value)
    return answer


def _connectivity(kind):
    def answer(g, query):
        result = oracle.connectivity_query(g, kind, *query)
        if result.kind == 'node_sequence':
            return _names(g, result.value)
        if result.kind == 'boolean':
            return _yes_no(result.value)
        return str(result.value)
    return answer


def _common_neighbor_count(g, query):
    return str(len(oracle.local_query(g, 'common_neighbors', *query).value))


def _jaccard(g, query):
    return oracle.local_query(g, 'jaccard', *query).witness


def _cycle(g, query):
    return _yes_no(oracle.detect_cycle(g).value)


def _topological(g, query):
    order = oracle.topological_order(g).value
    return '-1' if order is None else _names(g, order)


def _distance(g, query):
    return str(oracle.shortest_path(g, *query).value)


def _route(g, query):
    result = oracle.shortest_path(g, *query)
    return '-1' if result.witness is None else _names(g, result.witness)


def _max_flow(g, query):
    return str(oracle.max_flow(g, *query).value)


def _bipartite(g, query):
    return _yes_no(oracle.bipartite(g).value)


def _matching(g, query):
    return str(oracle.bipartite_matching(g).value)


def _hamilton(g, query):
    return _yes_no(oracle.hamilton_path(g).value)


def _hamilton_route(g, query):
    result = oracle.hamilton_path(g)
    return _names(g, result.witness) if result.value else 'No'


def _pagerank(g, query):
    return g.node_name(oracle.pagerank(g, 0.85, 3).value)


def _mst(g, query):
    return str(oracle.mst_weight(g).value)


def _node_set(solver):
    def answer(g, query):
        return _names(g, solver(g).witness)
    return answer


def _tour(g, query):
    result = oracle.tsp_held_karp(g)
    return '-1' if result.witness is None else _names(g, result.witness)


def _subgraph(host, pattern):
    return _yes_no(oracle.subgraph_match(pattern, host, 'induced').value)


def _mcs(host, pattern):
    return str(oracle.max_common_subgraph(host, pattern).value)


def _route_reference(nodes):
    return {'path_kind': 'route', 'source': nodes[0], 'target': nodes[1]}


def _set_reference(kind):
    return lambda nodes: {'set_kind': kind}


_ascending = 'List them in ascending order, separated by spaces.'

node_count = TaskSpec(
    'node_count', 'exact_int',
    'Count the nodes of an undirected graph.',
    'How many nodes are in this graph?', _local('node_count'))

edge_count = TaskSpec(
    'edge_count', 'exact_int',
    'Count the edges of an undirected graph.',
    'How many edges are in this graph?', _local('edge_count'))

edge_existence = EdgeQueryTaskSpec(
    'edge_existence', 'yes_no',
    'Determine whether two nodes of an undirected graph are adjacent.',
    'Is there an edge between node {0} and node {1}?',
    _local('edge_existence'), query_nodes=2)

node_degree = TaskSpec(
    'node_degree', 'exact_int',
    'Find the degree of a node in an undirected graph.',
    'What is the degree of node {0}?', _local('degree'), query_nodes=1)

neighbors = TaskSpec(
    'neighbors', 'exact_text_multiline',
    'List the neighbors of a node in an undirected graph.',
    'Which nodes are neighbors of node {0}? ' + _ascending,
    _local('neighbors'), query_nodes=1)

connected_nodes = TaskSpec(
    'connected_nodes', 'exact_text_multiline',
    'List the nodes joined to a node by an edge in either direction.',
    'Which nodes share an edge with node {0}? ' + _ascending,
    _local('connected_nodes'), directed=True, query_nodes=1)

common_neighbors = TaskSpec(
    'common_neighbors', 'exact_int',
    'Count the common neighbors of two nodes in an undirected graph.',
    'How many common neighbors do node {0} and node {1} have?',
    _common_neighbor_count, query_nodes=2)

jaccard = TaskSpec(
    'jaccard', 'numeric_tol',
    'Compute the Jaccard similarity of the neighborhoods of two nodes.',
    'What is the Jaccard similarity of the neighbor sets of node {0}'
    ' and node {1}? Give the answer with six decimal places.',
    _jaccard, query_nodes=2)

triangle_count = TaskSpec(
    'triangle_count', 'exact_int',
    'Count the triangles of an undirected graph.',
    'How many triangles are in this graph?', _local('triangle_count'))

predecessors = TaskSpec(
    'predecessors', 'exact_text_multiline',
    'List the direct predecessors of a node in a directed graph.',
    'Which nodes have an edge pointing to node {0}? ' + _ascending,
    _local('predecessors'), directed=True, query_nodes=1)

connectivity = TaskSpec(
    'connectivity', 'yes_no',
    'Determine whether two nodes are connected in an undirected graph.',
    'Is there a path between node {0} and node {1}?',
    _connectivity('connected'), query_nodes=2, density=0.15)

component_count = TaskSpec(
    'component_count', 'exact_int',
    'Count the connected components of an undirected graph.',
    'How many connected components are in this graph?',
    _connectivity('component_count'), density=0.15)

diameter = TaskSpec(
    'diameter', 'exact_int',
    'Find the diameter of a connected undirected graph.',
    'What is the largest number of edges on a shortest path between'
    ' two nodes of this graph?', _connectivity('diameter'),
    connected=True)

dfs_order = TaskSpec(
    'dfs_order', 'exact_text_multiline',
    'Traverse an undirected graph depth first.',
    'Start a depth-first search at node {0}, always moving to the'
    ' smallest unvisited neighbor first. List the nodes in the order'
    ' they are first visited, separated by spaces.',
    _connectivity('dfs_order'), query_nodes=1)

bfs_order = TaskSpec(
    'bfs_order', 'exact_text_multiline',
    'Traverse an undirected graph breadth first.',
    'Start a breadth-first search at node {0}, visiting the neighbors'
    ' of each node in ascending order. List the nodes in the order'
    ' they are first visited, separated by spaces.',
    _connectivity('bfs_order'), query_nodes=1)

cycle = TaskSpec(
    'cycle', 'yes_no',
    'Determine whether an undirected graph contains a cycle.',
    'Is there a cycle in this graph?', _cycle, density=0.15)

topological_sort = DagTaskSpec(
    'topological_sort', 'valid_order',
    'Find a topological order of a directed acyclic graph.',
    'Give an order of all nodes such that every edge points from an'
    ' earlier node to a later one, separated by spaces.',
    _topological, directed=True)

shortest_path = TaskSpec(
    'shortest_path', 'exact_int',
    'Find the shortest path between two nodes in an undirected graph.',
    'Give the weight of the shortest path from node {0} to node {1}.',
    _distance, weighted=True, query_nodes=2,
    instruction='Given a graph and a pair of nodes, you need to output'
                ' the shortest path between the two nodes.')

shortest_route = TaskSpec(
    'shortest_route', 'valid_path_optimal',
    'Find the shortest path between two nodes in an undirected graph.',
    'Give a shortest path from node {0} to node {1} as its nodes'
    ' separated by spaces, or -1 if there is no path.',
    _route, weighted=True, query_nodes=2, reference=_route_reference)

max_flow = TaskSpec(
    'max_flow', 'exact_int',
    'Find the maximum flow between two nodes in a directed graph.',
    'What is the maximum flow from node {0} to node {1}?',
    _max_flow, directed=True, weighted=True, query_nodes=2,
    weight_name='capacity')

bipartite = BipartiteTaskSpec(
    'bipartite', 'yes_no',
    'Determine whether an undirected graph is bipartite.',
    'Is this graph bipartite?', _bipartite, mixed=True)

bipartite_matching = BipartiteTaskSpec(
    'bipartite_matching', 'exact_int',
    'Find a maximum matching of a bipartite graph.',
    'How many edges does a maximum matching of this graph have?',
    _matching)

hamilton_path = TaskSpec(
    'hamilton_path', 'yes_no',
    'Determine whether an undirected graph has a Hamiltonian path.',
    'Is there a path in this graph that visits every node exactly'
    ' once?', _hamilton, density=0.5)

hamilton_route = TaskSpec(
    'hamilton_route', 'valid_path_optimal',
    'Find a Hamiltonian path of an undirected graph.',
    'Give a path that visits every node exactly once as its nodes'
    ' separated by spaces, or answer No if there is none.',
    _hamilton_route, density=0.5,
    reference=lambda nodes: {'path_kind': 'hamiltonian'})

subgraph_matching = PairTaskSpec(
    'subgraph_matching', 'yes_no',
    'Determine whether a graph G\' is an induced subgraph of a graph G.',
    'Is there a mapping of the nodes of G\' to distinct nodes of G'
    ' that preserves both edges and non-edges?', _subgraph,
    directed=True, density=0.4, max_nodes=oracle.SUBGRAPH_BOUND)

pagerank = TaskSpec(
    'pagerank', 'exact_int',
    'Find the most important node of a directed graph.',
    'Run PageRank for {1} iterations with a damping factor of {0},'
    ' starting from equal scores of 1/N, where nodes without outgoing'
    ' edges share their score equally among all nodes. Which node has'
    ' the largest score?', _pagerank, directed=True,
    extra=('0.85', '3'))

mst = TaskSpec(
    'mst', 'exact_int',
    'Find a minimum spanning tree of an undirected graph.',
    'What is the total weight of a minimum spanning tree of this'
    ' graph?', _mst, weighted=True, connected=True)

mis = TaskSpec(
    'mis', 'valid_set_optimal',
    'Find a maximum independent set of an undirected graph.',
    'Which nodes form a largest set without edges between them? '
    + _ascending, _node_set(oracle.exact_mis),
    max_nodes=oracle.SET_SEARCH_BOUND,
    reference=_set_reference('independent'))

mvc = TaskSpec(
    'mvc', 'valid_set_optimal',
    'Find a minimum vertex cover of an undirected graph.',
    'Which nodes form a smallest set touching every edge? '
    + _ascending, _node_set(oracle.exact_mvc),
    max_nodes=oracle.SET_SEARCH_BOUND, reference=_set_reference('cover'))

max_clique = TaskSpec(
    'max_clique', 'valid_set_optimal',
    'Find a maximum clique of an undirected graph.',
    'Which nodes form a largest set of pairwise adjacent nodes? '
    + _ascending, _node_set(oracle.max_clique),
    max_nodes=oracle.SET_SEARCH_BOUND,
    reference=_set_reference('clique'))

mcs = PairTaskSpec(
    'mcs', 'exact_int',
    'Find a maximum common induced subgraph of two undirected graphs.',
    'How many nodes does a largest graph that is an induced subgraph'
    ' of both G and G\' have?', _mcs, nodes=8, density=0.4,
    pattern_nodes=6)

tsp = CompleteTaskSpec(
    'tsp', 'valid_path_optimal',
    'Find the shortest tour of an undirected graph.',
    'Find the cheapest tour that starts at node {0}, visits every node'
    ' exactly once and returns to node {0}. List the tour in visiting'
    ' order without repeating node {0} at the end, or answer -1 if'
    ' there is none.', _tour, weighted=True, nodes=8,
    query_nodes=1, max_nodes=oracle.TSP_BOUND,
    reference=lambda nodes: {'path_kind': 'tour'})

# Simple registry
tasks = [
    node_count, edge_count, edge_existence, node_degree, neighbors,
    connected_nodes, common_neighbors, jaccard, triangle_count, predecessors,
    connectivity, component_count, diameter, dfs_order, bfs_order, cycle,
    topological_sort, shortest_path, shortest_route, max_flow, bipartite,
    bipartite_matching, hamilton_path, hamilton_route, subgraph_matching,
    pagerank, mst, mis, mvc, max_clique, mcs, tsp,
]


def get_task(task_id):
    """Return the task spec registered for an id.

    Registered `ITaskSpec` utilities win over the simple registry.
    """
    spec = queryUtility(ITaskSpec, task_id)
    if spec is None:
        spec = dict((spec.task_id, spec) for spec in tasks).get(task_id)
    if spec is None:
        raise ConfigurationError(f'unknown task {task_id!r}')
    return spec
