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
"""Answer checkers

A checker judges a predicted answer text against the gold answer text.
Checkers never raise on malformed predictions; they answer
``(False, reason)`` instead. Validity checks walk the graph directly and
share no code with the exact solvers.
"""
__docformat__ = 'restructuredtext'

import math
import re

from zope.component import queryUtility
from zope.interface import implementer

from zope.graphsolver.interfaces import ConfigurationError
from zope.graphsolver.interfaces import IAnswerChecker


_int_answer_re = re.compile(r'\s*(-?\d+)\s*\.?\s*$')
_float_answer_re = re.compile(r'\s*(-?\d+(?:\.\d*)?(?:[eE][-+]?\d+)?)\s*$')
_word_re = re.compile(r'[a-z]+')
_token_re = re.compile(r'[^\s,\[\]()]+')

#: Six-decimal gold answers are off by up to half a unit in the last place.
ABSOLUTE_TOLERANCE = 5e-7
RELATIVE_TOLERANCE = 1e-6


def _first_word(text):
    match = _word_re.search(text.lower())
    return match.group() if match else None


def node_tokens(text, graph):
    """Parse the node references of an answer into node indices.

    Return None when a token does not name a node.

    >>> from zope.graphsolver.graph import Graph
    >>> node_tokens('[1, 2] -> 0', Graph(3, offset=0))
    [1, 2, 0]
    >>> node_tokens('1 x', Graph(3)) is None
    True
    """
    tokens = [t for t in _token_re.findall(text) if t != '->']
    if graph.labels is not None:
        index = {label: i for i, label in enumerate(graph.labels)}
        if any(t not in index for t in tokens):
            return None
        return [index[t] for t in tokens]
    nodes = []
    for token in tokens:
        if not re.fullmatch(r'-?\d+', token):
            return None
        nodes.append(int(token) - graph.offset)
    return nodes


def walks_edges(graph, path):
    return all(0 <= u < graph.node_count and 0 <= v < graph.node_count
               and graph.has_edge(u, v) for u, v in zip(path, path[1:]))


def walk_cost(graph, path):
    return sum(graph.weight(u, v) for u, v in zip(path, path[1:]))


@implementer(IAnswerChecker)
class YesNoChecker:
    """Compares the first word of the answers.

    >>> YesNoChecker().check('Yes, there is a path.', 'Yes', None)
    (True, 'correct')
    >>> YesNoChecker().check('maybe', 'No', None)
    (False, 'format')
    """

    kind = 'yes_no'

    def check(self, predicted, gold, reference):
        word = _first_word(predicted)
        if word not in ('yes', 'no'):
            return False, 'format'
        if word == _first_word(gold):
            return True, 'correct'
        return False, 'wrong'


@implementer(IAnswerChecker)
class ExactIntChecker:
    """The prediction must be the gold integer.

    >>> ExactIntChecker().check(' 4\\n', '4', None)
    (True, 'correct')
    >>> ExactIntChecker().check('5', '4', None)
    (False, 'wrong')
    >>> ExactIntChecker().check('four', '4', None)
    (False, 'format')
    """

    kind = 'exact_int'

    def check(self, predicted, gold, reference):
        match = _int_answer_re.match(predicted)
        if match is None:
            return False, 'format'
        if int(match.group(1)) == int(gold):
            return True, 'correct'
        return False, 'wrong'


@implementer(IAnswerChecker)
class NumericToleranceChecker:
    """Floats within a relative tolerance of 1e-6.

    Gold answers are rounded to six decimals, so an absolute tolerance of
    5e-7 applies as well. Small values are compared by it alone:

    >>> NumericToleranceChecker().check('0.3333333333', '0.333333', None)
    (True, 'correct')
    >>> NumericToleranceChecker().check('0.0000014', '0.000001', None)
    (True, 'correct')
    >>> NumericToleranceChecker().check('0.0000016', '0.000001', None)
    (False, 'wrong')
    >>> NumericToleranceChecker().check('0.334', '0.333333', None)
    (False, 'wrong')
    """

    kind = 'numeric_tol'

    def check(self, predicted, gold, reference):
        match = _float_answer_re.match(predicted)
        if match is None:
            return False, 'format'
        if math.isclose(float(match.group(1)), float(gold),
                        rel_tol=RELATIVE_TOLERANCE,
                        abs_tol=ABSOLUTE_TOLERANCE):
            return True, 'correct'
        return False, 'wrong'


@implementer(IAnswerChecker)
class ValidOrderChecker:
    """Any topological order is accepted.

    The reference carries the ``graph``.
    """

    kind = 'valid_order'

    def check(self, predicted, gold, reference):
        graph = reference['graph']
        if _first_word(gold) == 'no' or gold.strip() == '-1':
            if (_first_word(predicted) == 'no'
                    or predicted.strip() == '-1'):
                return True, 'correct'
            return False, 'wrong'
        order = node_tokens(predicted, graph)
        if not order:
            return False, 'format'
        if sorted(order) != list(range(graph.node_count)):
            return False, 'not a permutation of the nodes'
        position = {node: i for i, node in enumerate(order)}
        for u, v, _ in graph.edges:
            if position[u] >= position[v]:
                return False, f'edge {graph.node_name(u)}->' \
                              f'{graph.node_name(v)} points backwards'
        return True, 'correct'


@implementer(IAnswerChecker)
class ValidPathOptimalChecker:
    """A valid path or tour that is as cheap as the gold one.

    The reference carries the ``graph`` and the ``path_kind``: ``route``
    (with ``source`` and ``target``), ``hamiltonian`` or ``tour``. A gold
    answer of ``-1`` or ``No`` says there is no path.
    """

    kind = 'valid_path_optimal'

    def _walk(self, graph, path, reference):
        """Return '(cost, None)' for a valid walk, '(None, reason)' else."""
        kind = reference['path_kind']
        n = graph.node_count
        if kind == 'route':
            if not path or path[0] != reference['source'] \
                    or path[-1] != reference['target']:
                return None, 'wrong end points'
            if len(set(path)) != len(path):
                return None, 'repeated node'
        elif kind == 'hamiltonian':
            if sorted(path) != list(range(n)):
                return None, 'does not visit every node once'
        elif kind == 'tour':
            if len(path) == n + 1 and path[0] == path[-1]:
                path = path[:-1]
            if sorted(path) != list(range(n)):
                return None, 'does not visit every node once'
            if path[0] != 0:
                return None, 'does not start at the first node'
            path = path + path[:1]
        if not walks_edges(graph, path):
            return None, 'uses a missing edge'
        return walk_cost(graph, path), None

    def check(self, predicted, gold, reference):
        graph = reference['graph']
        no_path = gold.strip() == '-1' or _first_word(gold) == 'no'
        if predicted.strip() == '-1' or _first_word(predicted) == 'no':
            return (True, 'correct') if no_path else (False, 'wrong')
        path = node_tokens(predicted, graph)
        if not path:
            return False, 'format'
        if no_path:
            return False, 'wrong'
        if any(not 0 <= u < graph.node_count for u in path):
            return False, 'unknown node'
        cost, problem = self._walk(graph, path, reference)
        if problem is not None:
            return False, problem
        if reference['path_kind'] == 'hamiltonian':
            return True, 'correct'
        best, _ = self._walk(
            graph, node_tokens(gold, graph), reference)
        if cost > best:
            return False, 'suboptimal'
        return True, 'correct'


@implementer(IAnswerChecker)
class ValidSetOptimalChecker:
    """A valid independent set, vertex cover or clique of optimal size.

    The reference carries the ``graph`` and the ``set_kind``:
    ``independent``, ``cover`` or ``clique``.
    """

    kind = 'valid_set_optimal'

    def check(self, predicted, gold, reference):
        graph = reference['graph']
        members = node_tokens(predicted, graph)
        if members is None:
            return False, 'format'
        chosen = set(members)
        if len(chosen) != len(members):
            return False, 'repeated node'
        if any(not 0 <= u < graph.node_count for u in chosen):
            return False, 'unknown node'
        kind = reference['set_kind']
        edges = [(u, v) for u, v, _ in graph.edges]
        if kind == 'independent':
            valid = not any(u in chosen and v in chosen for u, v in edges)
        elif kind == 'cover':
            valid = all(u in chosen or v in chosen for u, v in edges)
        else:
            valid = all(graph.has_edge(u, v) for u in chosen
                        for v in chosen if u < v)
        if not valid:
            return False, f'not a valid {kind} set'
        best = len(node_tokens(gold, graph))
        if len(chosen) == best:
            return True, 'correct'
        return False, 'suboptimal'


@implementer(IAnswerChecker)
class ExactTextMultilineChecker:
    """Line by line comparison ignoring runs of blanks.

    >>> ExactTextMultilineChecker().check('1  2\\n3\\n\\n', '1 2\\n3', None)
    (True, 'correct')
    """

    kind = 'exact_text_multiline'

    @staticmethod
    def _lines(text):
        lines = [' '.join(line.split()) for line in text.splitlines()]
        while lines and not lines[-1]:
            lines.pop()
        return lines

    def check(self, predicted, gold, reference):
        if self._lines(predicted) == self._lines(gold):
            return True, 'correct'
        return False, 'wrong'


# Simple registry
checkers = [
    ('yes_no', YesNoChecker()),
    ('exact_int', ExactIntChecker()),
    ('numeric_tol', NumericToleranceChecker()),
    ('valid_order', ValidOrderChecker()),
    ('valid_path_optimal', ValidPathOptimalChecker()),
    ('valid_set_optimal', ValidSetOptimalChecker()),
    ('exact_text_multiline', ExactTextMultilineChecker()),
]


def get_checker(kind):
    """Return the registered checker of a kind.

    Registered `IAnswerChecker` utilities win over the simple registry.
    """
    checker = queryUtility(IAnswerChecker, kind)
    if checker is None:
        checker = dict(checkers).get(kind)
    if checker is None:
        raise ConfigurationError(f'no answer checker of kind {kind!r}')
    return checker
