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
"""Graphs, their natural-language and standard-input forms

Graphs are parsed from the sentences benchmarks embed them in:

    >>> from zope.graphsolver.graph import parse_graph_text
    >>> g = parse_graph_text(
    ...     'In an undirected graph, (i,j,k) means that node i and node j are'
    ...     ' connected with an undirected edge with weight k. Q: The nodes'
    ...     ' are numbered from 0 to 3, and the edges are: (0,1,4) (1,2,1)'
    ...     ' (2,0,7). Give the weight of the shortest path from node 0 to'
    ...     ' node 2.', weighted=True)
    >>> g
    <Graph undirected nodes=4 edges=3 weighted>
    >>> g.edges
    ((0, 1, 4), (0, 2, 7), (1, 2, 1))

The placeholder tuple ``(i,j,k)`` of the explanation is not an edge.
Solvers read the canonical line based standard input instead:

    >>> from zope.graphsolver.graph import render_standard_input
    >>> print(render_standard_input(g, query=(0, 2)), end='')
    4 3
    0 1 4
    0 2 7
    1 2 1
    0 2
"""
__docformat__ = 'restructuredtext'

import hashlib
import re

import networkx as nx
from zope.interface import implementer

from zope.graphsolver.interfaces import GraphParseError
from zope.graphsolver.interfaces import IGraph
from zope.graphsolver.interfaces import IProblemFormulation
from zope.graphsolver.interfaces import PreconditionError
from zope.graphsolver.interfaces import QueryError


_range_re = re.compile(
    r'\bnodes?\b[^.()]*?\b(?:from\s+)?(\d+)\s+to\s+(\d+)', re.I)
_named_re = re.compile(
    r'\bnodes\s+are\s*:\s*(?P<names>.+?)\s*,?\s*and\s+the\s+edges\s+are',
    re.I | re.S)
_edges_re = re.compile(r'\bedges\b(?:\s+are)?\s*:?', re.I)
_tuple_re = re.compile(r'\(([^()\n]*)\)')
_separator_re = re.compile(r'\s*(?:->|,)\s*')
_int_re = re.compile(r'-?\d+$')
_placeholders = frozenset('ijkuvw')
_data_re = re.compile(
    r'\(\s*-?\d+\s*(?:,|->)\s*-?\d+|numbered\s+from\s+\d+\s+to\s+\d+', re.I)


def normalize_label(name):
    """Normalize a node name so it is a single standard-input token.

    >>> normalize_label('New York')
    'New_York'
    >>> normalize_label(' a.b ')
    'a.b'
    >>> normalize_label('  ')
    Traceback (most recent call last):
    ...
    zope.graphsolver.interfaces.GraphParseError: empty node name
    """
    name = name.strip()
    if not name:
        raise GraphParseError('empty node name')
    return re.sub(r'\s', '_', name)


@implementer(IGraph)
class Graph:
    """An immutable simple graph.

    Undirected edges are stored with ``u <= v``. Duplicate edges collapse
    to one, keeping the smallest weight:

    >>> g = Graph(3, [(1, 0, 5), (0, 1, 2), (2, 1, 1)])
    >>> g.edges
    ((0, 1, 2), (1, 2, 1))
    >>> g.neighbors(1)
    (0, 2)
    >>> g.weight(1, 0)
    2
    >>> Graph(2, [(0, 2)])
    Traceback (most recent call last):
    ...
    zope.graphsolver.interfaces.GraphParseError: edge (0, 2) has ...
    """

    def __init__(self, node_count, edges=(), directed=False, labels=None,
                 offset=0):
        if node_count < 0:
            raise GraphParseError('negative node count')
        if offset < 0:
            raise GraphParseError('negative node offset')
        canonical = {}
        weighted = None
        for edge in edges:
            if len(edge) == 2:
                u, v, w = edge[0], edge[1], None
            elif len(edge) == 3:
                u, v, w = edge
            else:
                raise GraphParseError(f'edge {tuple(edge)!r} has arity '
                                      f'{len(edge)}')
            if w is not None and not isinstance(w, int):
                raise GraphParseError(f'edge weight {w!r} is not an integer')
            if weighted is None:
                weighted = w is not None
            elif weighted != (w is not None):
                raise GraphParseError('mixed weighted and unweighted edges')
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise GraphParseError(
                    f'edge {(u, v)!r} has an endpoint outside '
                    f'0..{node_count - 1}')
            if not directed and u > v:
                u, v = v, u
            if (u, v) in canonical:
                old = canonical[(u, v)]
                if w is not None and w < old:
                    canonical[(u, v)] = w
            else:
                canonical[(u, v)] = w
        if labels is not None:
            labels = tuple(normalize_label(name) for name in labels)
            if len(labels) != node_count:
                raise GraphParseError(
                    f'{len(labels)} labels for {node_count} nodes')
            if len(set(labels)) != len(labels):
                raise GraphParseError('node names are not unique')
        self._directed = bool(directed)
        self._node_count = node_count
        self._offset = offset
        self._labels = labels
        self._weighted = bool(weighted)
        self._edges = tuple(
            (u, v, canonical[(u, v)]) for u, v in sorted(canonical))
        succ = [[] for _ in range(node_count)]
        pred = [[] for _ in range(node_count)]
        for u, v, _ in self._edges:
            succ[u].append(v)
            pred[v].append(u)
            if not directed and u != v:
                succ[v].append(u)
                pred[u].append(v)
        self._succ = tuple(tuple(sorted(s)) for s in succ)
        self._pred = tuple(tuple(sorted(p)) for p in pred)
        self._weights = {(u, v): w for u, v, w in self._edges}

    directed = property(lambda self: self._directed)
    node_count = property(lambda self: self._node_count)
    offset = property(lambda self: self._offset)
    labels = property(lambda self: self._labels)
    edges = property(lambda self: self._edges)
    weighted = property(lambda self: self._weighted)

    @property
    def edge_count(self):
        return len(self._edges)

    def _key(self, u, v):
        if not self._directed and u > v:
            return v, u
        return u, v

    def has_edge(self, u, v):
        return self._key(u, v) in self._weights

    def weight(self, u, v):
        """Weight of the edge from u to v, 1 on unweighted graphs."""
        w = self._weights[self._key(u, v)]
        return 1 if w is None else w

    def neighbors(self, u):
        return self._succ[u]

    def predecessors(self, u):
        return self._pred[u]

    def check_node(self, u):
        if not isinstance(u, int) or not 0 <= u < self._node_count:
            raise QueryError(f'node {u!r} is not in the graph')
        return u

    def node_name(self, u):
        """The token naming node u in texts and standard input."""
        if self._labels is not None:
            return self._labels[u]
        return str(u + self._offset)

    def to_networkx(self):
        """Return an equivalent networkx graph.

        Nodes are inserted in index order and edges in sorted order, so
        adjacency iteration is ascending. Unweighted edges get weight 1.
        """
        result = nx.DiGraph() if self._directed else nx.Graph()
        result.add_nodes_from(range(self._node_count))
        for u, v, w in self._edges:
            result.add_edge(u, v, weight=1 if w is None else w)
        return result

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self._directed, self._node_count, self._labels,
                self._edges) == (other._directed, other._node_count,
                                 other._labels, other._edges)

    def __hash__(self):
        return hash((self._directed, self._node_count, self._labels,
                     self._edges))

    def __repr__(self):
        kind = 'directed' if self._directed else 'undirected'
        extra = ' weighted' if self._weighted else ''
        if self._labels is not None:
            extra += ' labelled'
        return (f'<Graph {kind} nodes={self._node_count} '
                f'edges={len(self._edges)}{extra}>')


def _split_tuple(content):
    return [part.strip() for part in _separator_re.split(content.strip())]


def parse_graph_text(text, directed=False, weighted=False):
    """Parse the graph embedded in a natural-language problem.

    Nodes are declared either by a numeric range ("numbered from a to b")
    or by name ("The nodes are: A, B and the edges are: ..."); without a
    declaration the names of the edge tuples are the nodes, in order of
    first appearance. Edge tuples are ``(u,v)``, ``(u,v,w)`` or the
    directed ``(u->v)`` and ``(u->v,w)`` forms. Tuples whose endpoints are
    not node references (like the ``(i,j)`` of an explanation) are not
    edges.

    >>> g = parse_graph_text('The nodes are numbered from 1 to 3, and the'
    ...                      ' edges are: (1, 2) (3, 2).')
    >>> g.edges, g.offset
    (((0, 1, None), (1, 2, None)), 1)
    >>> g = parse_graph_text('The nodes are: New York, a.b, Rome, and the'
    ...                      ' edges are: (New York, Rome, 3) (a.b, Rome,'
    ...                      ' 1).', weighted=True)
    >>> g.labels
    ('New_York', 'a.b', 'Rome')
    >>> g.edges
    ((0, 2, 3), (1, 2, 1))
    >>> parse_graph_text('nodes 0 to 3, edges: (0,1,2,3)')
    Traceback (most recent call last):
    ...
    zope.graphsolver.interfaces.GraphParseError: tuple (0,1,2,3) has 4 ...
    """
    declaration = _range_re.search(text)
    names = None
    offset = 0
    if declaration is not None:
        first, last = int(declaration.group(1)), int(declaration.group(2))
        if last < first:
            raise GraphParseError(f'empty node range {first} to {last}')
        node_count = last - first + 1
        offset = first
    else:
        declaration = _named_re.search(text)
        if declaration is not None:
            names = [normalize_label(name)
                     for name in declaration.group('names').split(',')
                     if name.strip()]
    start = declaration.end() if declaration is not None else 0
    if declaration is not None and names is not None:
        start = declaration.start('names') + len(declaration.group('names'))
    marker = _edges_re.search(text, start)
    region = text[marker.end():] if marker is not None else text[start:]

    tuples = []
    for match in _tuple_re.finditer(region):
        parts = _split_tuple(match.group(1))
        endpoints = parts[:2]
        if names is None and declaration is not None:
            if not all(_int_re.match(p) for p in endpoints):
                continue
        elif names is not None:
            known = [normalize_label(p) in names for p in endpoints if p]
            if not any(known):
                continue
            if not all(known) or len(known) < 2:
                unknown = [p for p in endpoints
                           if not p or normalize_label(p) not in names]
                raise GraphParseError(
                    f'tuple ({match.group(1)}) has an undeclared endpoint '
                    f'{unknown[0]!r}')
        elif all(len(p) == 1 and p in _placeholders for p in parts[:3]):
            continue
        elif not all(parts):
            continue
        if len(parts) not in (2, 3):
            raise GraphParseError(
                f'tuple ({match.group(1)}) has {len(parts)} components')
        tuples.append((match.group(1), parts))

    arities = {len(parts) for _, parts in tuples}
    if len(arities) > 1:
        raise GraphParseError('mixed weighted and unweighted tuples')
    expected = 3 if weighted else 2
    if arities and arities != {expected}:
        kind = 'weighted' if weighted else 'unweighted'
        raise GraphParseError(
            f'expected {kind} tuples of {expected} components, '
            f'got {arities.pop()}')

    if declaration is None:
        names = []
        for _, parts in tuples:
            for part in parts[:2]:
                label = normalize_label(part)
                if label not in names:
                    names.append(label)
        if not names:
            raise GraphParseError('no node declaration and no edges')
    if names is not None:
        node_count = len(names)
        index = {name: i for i, name in enumerate(names)}

    edges = []
    for raw, parts in tuples:
        if names is not None:
            u, v = (index[normalize_label(p)] for p in parts[:2])
        else:
            u, v = int(parts[0]) - offset, int(parts[1]) - offset
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise GraphParseError(
                    f'tuple ({raw}) has an endpoint outside '
                    f'{offset}..{offset + node_count - 1}')
        if weighted:
            if not _int_re.match(parts[2]):
                raise GraphParseError(f'tuple ({raw}) has a non-integer '
                                      f'weight')
            edges.append((u, v, int(parts[2])))
        else:
            edges.append((u, v))
    return Graph(node_count, edges, directed=directed, labels=names,
                 offset=offset)


def describe_graph(g):
    """Render the benchmark sentence declaring a graph.

    >>> print(describe_graph(Graph(3, [(0, 1, 5), (1, 2, 3)])))
    The nodes are numbered from 0 to 2, and the edges are: (0,1,5) (1,2,3).
    >>> print(describe_graph(Graph(2, [(1, 0)], directed=True, offset=1)))
    The nodes are numbered from 1 to 2, and the edges are: (2->1).
    """
    separator = '->' if g.directed else ','
    tuples = []
    for u, v, w in g.edges:
        item = g.node_name(u) + separator + g.node_name(v)
        if w is not None:
            item += f',{w}'
        tuples.append(f'({item})')
    if g.labels is not None:
        if g.labels:
            head = 'The nodes are: ' + ', '.join(
                label.replace('_', ' ') for label in g.labels)
        else:
            head = 'The nodes are: '
        head += ', and the edges are:'
    else:
        head = (f'The nodes are numbered from {g.offset} to '
                f'{g.offset + g.node_count - 1}, and the edges are:')
    if tuples:
        return head + ' ' + ' '.join(tuples) + '.'
    return head


def render_standard_input(g, query=(), extra=()):
    """Render a graph and a query as canonical standard input.

    The first line holds the node and edge counts. Labelled graphs follow
    it with one line of node names. Then come the edges in sorted order,
    one per line, and last the query line: the query nodes followed by
    the extra tokens. There is no query line when both are empty.

    >>> print(render_standard_input(Graph(1)), end='')
    1 0
    >>> render_standard_input(Graph(2), query=(2,))
    Traceback (most recent call last):
    ...
    zope.graphsolver.interfaces.QueryError: node 2 is not in the graph
    """
    lines = [f'{g.node_count} {g.edge_count}']
    if g.labels is not None:
        lines.append(' '.join(g.labels))
    for u, v, w in g.edges:
        line = f'{g.node_name(u)} {g.node_name(v)}'
        if w is not None:
            line += f' {w}'
        lines.append(line)
    tokens = [g.node_name(g.check_node(q)) for q in query]
    tokens.extend(str(token) for token in extra)
    if tokens:
        lines.append(' '.join(tokens))
    return ''.join(line + '\n' for line in lines)


def parse_standard_input(text, directed=False, weighted=False, offset=0,
                         labelled=False):
    """Read standard input written by `render_standard_input`.

    Return the graph and the tuple of query tokens.

    >>> g, query = parse_standard_input('3 2\\n0 1 4\\n1 2 1\\n0 2\\n',
    ...                                 weighted=True)
    >>> g.edges, query
    (((0, 1, 4), (1, 2, 1)), ('0', '2'))
    """
    lines = text.splitlines()
    try:
        n, m = (int(token) for token in lines[0].split())
        position = 1
        names = None
        if labelled:
            names = lines[1].split()
            position = 2
        index = {name: i for i, name in enumerate(names or ())}
        edges = []
        for line in lines[position:position + m]:
            tokens = line.split()
            if len(tokens) != (3 if weighted else 2):
                raise GraphParseError(f'bad edge line {line!r}')
            if names is not None:
                u, v = index[tokens[0]], index[tokens[1]]
            else:
                u, v = int(tokens[0]) - offset, int(tokens[1]) - offset
            if weighted:
                edges.append((u, v, int(tokens[2])))
            else:
                edges.append((u, v))
        if len(edges) != m:
            raise GraphParseError(f'expected {m} edge lines')
        rest = lines[position + m:]
    except (IndexError, KeyError, ValueError) as e:
        if isinstance(e, GraphParseError):
            raise
        raise GraphParseError(f'malformed standard input: {e}') from e
    query = tuple(' '.join(rest).split())
    return Graph(n, edges, directed=directed, labels=names,
                 offset=offset), query


@implementer(IProblemFormulation)
class ProblemFormulation:
    """A data-free problem statement with its input/output contract."""

    def __init__(self, pure_problem, input_description, output_description):
        for name, value in (('pure_problem', pure_problem),
                            ('input_description', input_description),
                            ('output_description', output_description)):
            if not value or not value.strip():
                raise PreconditionError(f'{name} is empty')
        self.pure_problem = pure_problem
        self.input_description = input_description
        self.output_description = output_description

    def contains_data(self):
        """Does the pure problem still mention concrete graph data?

        >>> ProblemFormulation('Edges (0,1) and (1,2).', 'x', 'y'
        ...                    ).contains_data()
        True
        >>> ProblemFormulation('Edges (u,v) of a graph on n nodes.', 'x',
        ...                    'y').contains_data()
        False
        """
        return _data_re.search(self.pure_problem) is not None

    def to_dict(self):
        return {'pure_problem': self.pure_problem,
                'input_description': self.input_description,
                'output_description': self.output_description}

    @classmethod
    def from_dict(cls, data):
        return cls(data['pure_problem'], data['input_description'],
                   data['output_description'])

    def __eq__(self, other):
        if not isinstance(other, ProblemFormulation):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self):
        return f'<ProblemFormulation {self.pure_problem[:40]!r}>'


class CacheKey:
    """A stable content digest naming cached artifacts."""

    def __init__(self, digest):
        self.digest = digest

    def __str__(self):
        return self.digest

    def __eq__(self, other):
        if not isinstance(other, CacheKey):
            return NotImplemented
        return self.digest == other.digest

    def __hash__(self):
        return hash(self.digest)

    def __repr__(self):
        return f'<CacheKey {self.digest[:12]}>'


def _normalize(text):
    return ' '.join(text.split()).casefold()


def canonical_formulation_hash(f):
    """SHA-256 over the whitespace-collapsed, case-folded formulation.

    >>> a = ProblemFormulation('Find  it.', 'The first line\\n  n', 'k')
    >>> b = ProblemFormulation('find it.', 'The first line n', 'k')
    >>> canonical_formulation_hash(a) == canonical_formulation_hash(b)
    True
    >>> len(canonical_formulation_hash(a).digest)
    64
    """
    content = '\x1f'.join(
        _normalize(part) for part in (
            f.pure_problem, f.input_description, f.output_description))
    data = ('formulation-v1\x1e' + content).encode('utf-8')
    return CacheKey(hashlib.sha256(data).hexdigest())


def task_cache_key(task_id):
    """The cache key of a dataset task id."""
    data = ('task-v1\x1e' + task_id).encode('utf-8')
    return CacheKey(hashlib.sha256(data).hexdigest())
