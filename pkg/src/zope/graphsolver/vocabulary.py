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
"""Vocabularies of graph task and answer checker names

For use with zope.component and zope.schema.
"""
from zope.component import getUtilitiesFor
from zope.interface import directlyProvides
from zope.schema.interfaces import IVocabularyFactory
from zope.schema.vocabulary import SimpleTerm
from zope.schema.vocabulary import SimpleVocabulary

from zope.graphsolver.interfaces import IAnswerChecker
from zope.graphsolver.interfaces import ITaskSpec


def TaskNamesVocabulary(context=None):
    """Return a vocabulary listing registered graph tasks by id.
    """
    terms = []
    for name, util in sorted(getUtilitiesFor(ITaskSpec, context)):
        terms.append(SimpleTerm(name, title=util.summary))
    return SimpleVocabulary(terms)


directlyProvides(TaskNamesVocabulary, IVocabularyFactory)


def CheckerKindsVocabulary(context=None):
    terms = [SimpleTerm(name)
             for name, util in sorted(getUtilitiesFor(IAnswerChecker,
                                                      context))]
    return SimpleVocabulary(terms)


directlyProvides(CheckerKindsVocabulary, IVocabularyFactory)
