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
"""Configuration Tests
"""
import doctest
import os
import tempfile
import unittest

from zope.interface.verify import verifyObject

from zope.graphsolver.config import load_configuration
from zope.graphsolver.interfaces import ConfigurationError
from zope.graphsolver.interfaces import IGraphSolverConfiguration


class TestLoadConfiguration(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def write(self, text):
        path = os.path.join(self.tmp.name, 'graphsolver.ini')
        with open(path, 'w', encoding='utf-8') as f:
            f.write(text)
        return path

    def assertConfigurationError(self, message, path=None, **overrides):
        with self.assertRaises(ConfigurationError) as raised:
            load_configuration(path, overrides)
        self.assertIn(message, str(raised.exception))

    def test_defaults(self):
        configuration = load_configuration()
        verifyObject(IGraphSolverConfiguration, configuration)
        self.assertEqual(configuration.backend, 'scripted')
        self.assertEqual(configuration.model_reasoning, 'o3-mini')
        self.assertEqual(configuration.solver_timeout, 60.0)
        self.assertEqual(configuration.code_retries, 2)
        self.assertTrue(configuration.reuse)
        self.assertIsNone(configuration.cache_dir)
        self.assertIsNone(configuration.max_memory_bytes)

    def test_file_values(self):
        path = self.write(
            '[graphsolver]\n'
            'backend = live\n'
            'endpoint = https://llm.example.com/v1/chat/completions\n'
            'model_reasoning = o1\n'
            'temperature = 0.5\n'
            'reuse = false\n'
            'cache_dir = \n'
            '\n'
            '[prices]\n'
            'o1 = 1.5e-5 6e-5\n'
            'GPT-4o-mini = 0 0\n')
        configuration = load_configuration(path)
        self.assertEqual(configuration.backend, 'live')
        self.assertEqual(configuration.model_reasoning, 'o1')
        self.assertEqual(configuration.temperature, 0.5)
        self.assertFalse(configuration.reuse)
        self.assertIsNone(configuration.cache_dir)
        self.assertEqual(sorted(configuration.prices), ['GPT-4o-mini', 'o1'])

    def test_overrides_win(self):
        path = self.write('[graphsolver]\nworkers = 8\nsolver_timeout = 9\n')
        configuration = load_configuration(path, {'workers': 2,
                                                  'solver_timeout': '3.5'})
        self.assertEqual(configuration.workers, 2)
        self.assertEqual(configuration.solver_timeout, 3.5)

    def test_invalid_values(self):
        self.assertConfigurationError('workers: Value is too small',
                                      workers='0')
        self.assertConfigurationError('temperature:', temperature='warm')
        self.assertConfigurationError('backend:', backend='psychic')
        self.assertConfigurationError('unknown configuration key',
                                      colour='blue')
        self.assertConfigurationError('endpoint: the live backend needs one',
                                      backend='live')
        self.assertConfigurationError('endpoint:', endpoint='not a url')

    def test_prices_only_in_their_section(self):
        self.assertConfigurationError('[prices] section', prices='m 1 2')

    def test_bad_prices(self):
        self.assertConfigurationError(
            'needs a prompt and a completion price',
            self.write('[prices]\nm = 1\n'))
        self.assertConfigurationError(
            'negative price', self.write('[prices]\nm = 1 -2\n'))

    def test_bad_files(self):
        self.assertConfigurationError(
            'no configuration file', os.path.join(self.tmp.name, 'none'))
        self.assertConfigurationError(
            "unknown configuration section 'zope'",
            self.write('[zope]\na = 1\n'))
        self.assertConfigurationError(
            'graphsolver.ini', self.write('workers = 1\n'))


def test_suite():
    suite = unittest.TestSuite((
        doctest.DocTestSuite('zope.graphsolver.config'),
    ))
    suite.addTests(unittest.defaultTestLoader.loadTestsFromName(__name__))
    return suite
