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
"""Graph Tests
"""
import doctest
import itertools
import os
import random
import subprocess
import sys
import unittest

from zope.interface.verify import verifyObject

from zope.graphsolver.interfaces import GraphParseError
from zope.graphsolver.interfaces import IGraph
from zope.graphsolver.interfaces import IProblemFormulation
from zope.graphsolver.interfaces import PreconditionError
from zope.graphsolver.interfaces import QueryError


SHORTEST_PATH_TEXT = (
    'Given a graph and a pair of nodes, you need to output the shortest'
    ' path between the two nodes. In an undirected graph, (i,j,k) means'
    ' that node i and node j are connected with an undirected edge with'
    ' weight k. Q: The nodes are numbered from 0 to 4, and the edges are:'
    ' (0,1,4) (0,2,1) (2,1,2) (3,4,6) (1,2,9). Give the weight of the'
    ' shortest path from node 0 to node 1.'
)

DIRECTED_TEXT = (
    'In a directed graph, (i->j) means that there is a directed edge from'
    ' node i to node j. Q: The nodes are numbered from 1 to 4, and the'
    ' edges are: (1->2) (2->3) (4->1) (2->1).'
)


def random_graphs(count, seed=20):
    """Graphs of every kind: directed or not, weighted or not, offset 0/1."""
    from zope.graphsolver.graph import Graph
    rng = random.Random(seed)
    kinds = list(itertools.product((False, True), (False, True), (0, 1)))
    for index in range(count):
        directed, weighted, offset = kinds[index % len(kinds)]
        n = rng.randint(1, 9)
        pairs = (itertools.permutations(range(n), 2) if directed
                 else itertools.combinations(range(n), 2))
        edges = [pair for pair in pairs if rng.random() < 0.4]
        if weighted:
            edges = [(u, v, rng.randint(1, 20)) for u, v in edges]
        yield Graph(n, edges, directed=directed, offset=offset)


class TestGraph(unittest.TestCase):

    def _make_one(self, *args, **kw):
        from zope.graphsolver.graph import Graph
        return Graph(*args, **kw)

    def test_interface_compliance(self):
        verifyObject(IGraph, self._make_one(2, [(0, 1)]))

    def test_directed_edges_keep_orientation(self):
        g = self._make_one(3, [(2, 0), (0, 2), (1, 0)], directed=True)
        self.assertEqual(g.edges, ((0, 2, None), (1, 0, None),
                                   (2, 0, None)))
        self.assertTrue(g.has_edge(2, 0))
        self.assertFalse(g.has_edge(0, 1))
        self.assertEqual(g.neighbors(0), (2,))
        self.assertEqual(g.predecessors(0), (1, 2))

    def test_undirected_neighbors_are_symmetric(self):
        g = self._make_one(3, [(2, 0, 4), (1, 1, 2)])
        self.assertEqual(g.neighbors(0), (2,))
        self.assertEqual(g.neighbors(2), (0,))
        self.assertEqual(g.neighbors(1), (1,))
        self.assertEqual(g.weight(2, 0), 4)
        self.assertTrue(g.weighted)

    def test_unweighted_weight_is_one(self):
        g = self._make_one(2, [(0, 1)])
        self.assertFalse(g.weighted)
        self.assertEqual(g.weight(1, 0), 1)

    def test_invalid_graphs(self):
        self.assertRaises(GraphParseError, self._make_one, -1)
        self.assertRaises(GraphParseError, self._make_one, 2, [(0, 1, 2.5)])
        self.assertRaises(GraphParseError, self._make_one, 2,
                          [(0, 1), (1, 0, 3)])
        self.assertRaises(GraphParseError, self._make_one, 2, [(0, 1, 2, 3)])
        self.assertRaises(GraphParseError, self._make_one, 2,
                          labels=('a', 'a'))
        self.assertRaises(GraphParseError, self._make_one, 2,
                          labels=('a',))

    def test_node_names(self):
        g = self._make_one(2, offset=1)
        self.assertEqual(g.node_name(0), '1')
        g = self._make_one(2, labels=('San Jose', 'Rome'))
        self.assertEqual(g.node_name(0), 'San_Jose')
        self.assertIn('labelled', repr(g))

    def test_check_node(self):
        g = self._make_one(2)
        self.assertEqual(g.check_node(1), 1)
        self.assertRaises(QueryError, g.check_node, 2)
        self.assertRaises(QueryError, g.check_node, '1')

    def test_equality_and_hash(self):
        a = self._make_one(3, [(1, 0), (1, 2)])
        b = self._make_one(3, [(2, 1), (0, 1)])
        self.assertEqual(a, b)
        self.assertEqual(hash(a), hash(b))
        self.assertNotEqual(a, self._make_one(3, [(1, 0), (1, 2)],
                                              directed=True))

    def test_to_networkx(self):
        graph = self._make_one(3, [(0, 2, 5)]).to_networkx()
        self.assertEqual(list(graph.nodes), [0, 1, 2])
        self.assertEqual(graph[2][0]['weight'], 5)


class TestParseGraphText(unittest.TestCase):

    def _callFUT(self, *args, **kw):
        from zope.graphsolver.graph import parse_graph_text
        return parse_graph_text(*args, **kw)

    def test_weighted_benchmark_text(self):
        g = self._callFUT(SHORTEST_PATH_TEXT, weighted=True)
        self.assertEqual(g.node_count, 5)
        # (2,1,2) and (1,2,9) collapse to the lighter edge
        self.assertEqual(g.edges, ((0, 1, 4), (0, 2, 1), (1, 2, 2),
                                   (3, 4, 6)))

    def test_directed_text_with_offset(self):
        g = self._callFUT(DIRECTED_TEXT, directed=True)
        self.assertEqual(g.offset, 1)
        self.assertEqual(g.edges, ((0, 1, None), (1, 0, None),
                                   (1, 2, None), (3, 0, None)))

    def test_undeclared_nodes(self):
        g = self._callFUT('Edges: (a,b) (b,c) (d,a).')
        self.assertEqual(g.labels, ('a', 'b', 'c', 'd'))
        self.assertEqual(g.edge_count, 3)

    def test_isolated_nodes_are_kept(self):
        g = self._callFUT('The nodes are numbered from 0 to 9, and the'
                          ' edges are: (0,1).')
        self.assertEqual(g.node_count, 10)

    def test_errors(self):
        self.assertRaises(GraphParseError, self._callFUT,
                          'The nodes are numbered from 3 to 1, and the'
                          ' edges are: (3,1).')
        self.assertRaises(GraphParseError, self._callFUT,
                          'The nodes are numbered from 0 to 2, and the'
                          ' edges are: (0,5).')
        self.assertRaises(GraphParseError, self._callFUT,
                          'The nodes are numbered from 0 to 2, and the'
                          ' edges are: (0,1) (1,2,3).')
        self.assertRaises(GraphParseError, self._callFUT,
                          'The nodes are numbered from 0 to 2, and the'
                          ' edges are: (0,1).', weighted=True)
        self.assertRaises(GraphParseError, self._callFUT, 'No graph here.')

    def test_undeclared_named_endpoint(self):
        with self.assertRaises(GraphParseError) as raised:
            self._callFUT('The nodes are: A, B, C, and the edges are:'
                          ' (A, B) (A, D) (B, C).')
        self.assertIn("'D'", str(raised.exception))

    def test_named_graph_skips_placeholder_tuples(self):
        g = self._callFUT('(u,v) is an edge. The nodes are: A, B, C, and the'
                          ' edges are: (A, B) (B, C). Is there a path (x, y)'
                          ' from A to C?')
        self.assertEqual(g.edges, ((0, 1, None), (1, 2, None)))

    def test_describe_round_trip_random_graphs(self):
        from zope.graphsolver.graph import describe_graph
        for g in random_graphs(200):
            again = self._callFUT(describe_graph(g), directed=g.directed,
                                  weighted=g.weighted)
            self.assertEqual(again, g)
            self.assertEqual(again.offset, g.offset)

    def test_describe_round_trip(self):
        from zope.graphsolver.graph import describe_graph
        g = self._callFUT(SHORTEST_PATH_TEXT, weighted=True)
        self.assertEqual(self._callFUT(describe_graph(g), weighted=True), g)
        g = self._callFUT(DIRECTED_TEXT, directed=True)
        again = self._callFUT(describe_graph(g), directed=True)
        self.assertEqual(again, g)
        self.assertEqual(again.offset, 1)


class TestStandardInput(unittest.TestCase):

    def test_labelled_graph(self):
        from zope.graphsolver.graph import Graph
        from zope.graphsolver.graph import parse_standard_input
        from zope.graphsolver.graph import render_standard_input
        g = Graph(3, [(0, 2, 4), (1, 2, 1)], labels=('A', 'New York', 'C'))
        text = render_standard_input(g, query=(1,), extra=('0.85',))
        self.assertEqual(text, '3 2\nA New_York C\nA C 4\nNew_York C 1\n'
                               'New_York 0.85\n')
        parsed, query = parse_standard_input(text, weighted=True,
                                             labelled=True)
        self.assertEqual(parsed, g)
        self.assertEqual(query, ('New_York', '0.85'))

    def test_offset_nodes(self):
        from zope.graphsolver.graph import Graph
        from zope.graphsolver.graph import render_standard_input
        g = Graph(2, [(0, 1)], offset=1)
        self.assertEqual(render_standard_input(g, (1, 0)), '2 1\n1 2\n2 1\n')

    def test_round_trip_random_graphs(self):
        from zope.graphsolver.graph import parse_standard_input
        from zope.graphsolver.graph import render_standard_input
        for g in random_graphs(200):
            parsed, query = parse_standard_input(
                render_standard_input(g), directed=g.directed,
                weighted=g.weighted, offset=g.offset)
            self.assertEqual(parsed, g)
            self.assertEqual(query, ())

    def test_malformed(self):
        from zope.graphsolver.graph import parse_standard_input
        for text in ('', 'x y\n', '2 2\n0 1\n', '2 1\n0 1 5\n', '2 1\n0 7\n'):
            self.assertRaises(GraphParseError, parse_standard_input, text)


class TestProblemFormulation(unittest.TestCase):

    def _make_one(self, pure='Find the shortest path between two nodes.',
                  inp='The first line holds n and m.',
                  out='Print one integer.'):
        from zope.graphsolver.graph import ProblemFormulation
        return ProblemFormulation(pure, inp, out)

    def test_interface_compliance(self):
        verifyObject(IProblemFormulation, self._make_one())

    def test_empty_parts(self):
        self.assertRaises(PreconditionError, self._make_one, pure='  ')
        self.assertRaises(PreconditionError, self._make_one, out='')

    def test_contains_data(self):
        self.assertFalse(self._make_one().contains_data())
        self.assertTrue(self._make_one(
            pure='The nodes are numbered from 0 to 4.').contains_data())
        self.assertTrue(self._make_one(
            pure='Edges: (0->1) (1->2).').contains_data())

    def test_dict_round_trip(self):
        from zope.graphsolver.graph import ProblemFormulation
        f = self._make_one()
        self.assertEqual(ProblemFormulation.from_dict(f.to_dict()), f)

    def test_hash_ignores_layout(self):
        from zope.graphsolver.graph import canonical_formulation_hash
        a = self._make_one(inp='The first line\n    holds n and m.')
        b = self._make_one(inp='the first line holds N and M.')
        c = self._make_one(out='Print two integers.')
        self.assertEqual(canonical_formulation_hash(a),
                         canonical_formulation_hash(b))
        self.assertNotEqual(canonical_formulation_hash(a),
                            canonical_formulation_hash(c))

    def test_task_keys_differ_from_formulation_keys(self):
        from zope.graphsolver.graph import task_cache_key
        self.assertEqual(task_cache_key('tsp'), task_cache_key('tsp'))
        self.assertNotEqual(task_cache_key('tsp'), task_cache_key('mst'))
        self.assertEqual(len(str(task_cache_key('tsp'))), 64)

    def test_keys_are_stable_across_interpreters(self):
        from zope.graphsolver.graph import canonical_formulation_hash
        from zope.graphsolver.graph import task_cache_key
        script = (
            'from zope.graphsolver.graph import ProblemFormulation\n'
            'from zope.graphsolver.graph import canonical_formulation_hash\n'
            'from zope.graphsolver.graph import task_cache_key\n'
            'f = ProblemFormulation("Find the shortest path between two'
            ' nodes.", "The first line holds n and m.",'
            ' "Print one integer.")\n'
            'print(canonical_formulation_hash(f))\n'
            'print(task_cache_key("tsp"))\n')
        expected = [str(canonical_formulation_hash(self._make_one())),
                    str(task_cache_key('tsp'))]
        path = os.pathsep.join(entry for entry in sys.path if entry)
        for seed in ('0', '1', '4242'):
            env = dict(os.environ, PYTHONHASHSEED=seed, PYTHONPATH=path)
            output = subprocess.run([sys.executable, '-c', script], env=env,
                                    capture_output=True, text=True,
                                    check=True).stdout
            self.assertEqual(output.split(), expected)


def test_suite():
    suite = unittest.TestSuite((
        doctest.DocTestSuite(
            'zope.graphsolver.graph',
            optionflags=doctest.ELLIPSIS),
    ))
    suite.addTests(unittest.defaultTestLoader.loadTestsFromName(__name__))
    return suite
