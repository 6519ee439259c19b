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
"""Setup graph solver components as utilities
"""
__docformat__ = "reStructuredText"

from zope.configuration import xmlconfig

import zope.graphsolver
from zope.graphsolver.sandbox import ExecutionResult


def setUpGraphSolver():
    """Helper function for setting up graph solver utilities for tests

    >>> from zope.component import getUtility
    >>> from zope.graphsolver.interfaces import IAnswerChecker
    >>> from zope.graphsolver.interfaces import IChatBackendFactory
    >>> from zope.graphsolver.interfaces import ITaskSpec
    >>> from zope.schema.interfaces import IVocabularyFactory
    >>> setUpGraphSolver()

    >>> getUtility(IAnswerChecker, 'yes_no')
    <zope.graphsolver.checkers.YesNoChecker object at 0x...>
    >>> getUtility(IAnswerChecker, 'valid_path_optimal')
    <zope.graphsolver.checkers.ValidPathOptimalChecker object at 0x...>
    >>> getUtility(ITaskSpec, 'tsp')
    <CompleteTaskSpec tsp>
    >>> getUtility(ITaskSpec, 'shortest_path')
    <TaskSpec shortest_path>
    >>> getUtility(IChatBackendFactory, 'live')
    <function live_backend_factory at 0x...>

    >>> voc = getUtility(IVocabularyFactory, 'Graph Task Names')
    >>> voc = voc(None)
    >>> voc
    <zope.schema.vocabulary.SimpleVocabulary object at 0x...>
    >>> len(voc)
    32
    >>> 'hamilton_path' in voc
    True
    >>> 'mcs' in voc
    True

    >>> voc = getUtility(IVocabularyFactory, 'Answer Checker Kinds')(None)
    >>> sorted(term.value for term in voc)
    ... # doctest: +NORMALIZE_WHITESPACE
    ['exact_int', 'exact_text_multiline', 'numeric_tol', 'valid_order',
     'valid_path_optimal', 'valid_set_optimal', 'yes_no']

    """
    xmlconfig.file('configure.zcml', zope.graphsolver)


class FakeSandbox:
    """Returns canned solver results and records the runs.

    Extractor runs (those with arguments) write `extracted` to the output
    path. Solver `results` are served in order, repeating the last one.
    """

    def __init__(self, extracted, *results):
        self.extracted = extracted
        self.results = list(results) or [ExecutionResult('ok', b'')]
        self.runs = []
        self.solver_runs = 0

    def execute(self, program_source, stdin_data, limits, args=()):
        self.runs.append((program_source, stdin_data, tuple(args)))
        if args:
            with open(args[1], 'w', encoding='utf-8') as f:
                f.write(self.extracted)
            return ExecutionResult('ok', b'', b'', 0)
        self.solver_runs += 1
        return self.results[min(self.solver_runs, len(self.results)) - 1]


class FailingBackend:
    """A chat backend raising the given error on every call."""

    def __init__(self, error):
        self.error = error
        self.calls = []

    def complete(self, request):
        self.calls.append((request.stage, request.key))
        raise self.error