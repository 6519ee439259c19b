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
"""Vocabulary and Component Setup Tests
"""
import doctest
import unittest

from zope.component import provideUtility
from zope.component.testing import PlacelessSetup
from zope.schema.interfaces import IVocabularyFactory

from zope.graphsolver.interfaces import IAnswerChecker
from zope.graphsolver.interfaces import ITaskSpec


class TestVocabularies(PlacelessSetup, unittest.TestCase):

    def test_empty_without_registrations(self):
        from zope.graphsolver.vocabulary import CheckerKindsVocabulary
        from zope.graphsolver.vocabulary import TaskNamesVocabulary
        self.assertEqual(len(TaskNamesVocabulary()), 0)
        self.assertEqual(len(CheckerKindsVocabulary()), 0)

    def test_task_titles_are_summaries(self):
        from zope.graphsolver.tasks import cycle
        from zope.graphsolver.tasks import tsp
        from zope.graphsolver.vocabulary import TaskNamesVocabulary
        provideUtility(tsp, ITaskSpec, 'tsp')
        provideUtility(cycle, ITaskSpec, 'cycle')
        vocabulary = TaskNamesVocabulary()
        self.assertEqual([term.value for term in vocabulary],
                         ['cycle', 'tsp'])
        self.assertEqual(vocabulary.getTerm('tsp').title, tsp.summary)

    def test_checker_kinds(self):
        from zope.graphsolver.checkers import ExactIntChecker
        from zope.graphsolver.vocabulary import CheckerKindsVocabulary
        provideUtility(ExactIntChecker(), IAnswerChecker, 'exact_int')
        self.assertIn('exact_int', CheckerKindsVocabulary())

    def test_factories_provide_the_interface(self):
        from zope.graphsolver import vocabulary
        self.assertTrue(IVocabularyFactory.providedBy(
            vocabulary.TaskNamesVocabulary))
        self.assertTrue(IVocabularyFactory.providedBy(
            vocabulary.CheckerKindsVocabulary))


def test_suite():
    from zope.component.testing import setUp
    from zope.component.testing import tearDown
    suite = unittest.TestSuite((
        doctest.DocTestSuite(
            'zope.graphsolver.testing',
            optionflags=doctest.ELLIPSIS,
            setUp=setUp,
            tearDown=tearDown),
    ))
    suite.addTests(unittest.defaultTestLoader.loadTestsFromName(__name__))
    return suite
