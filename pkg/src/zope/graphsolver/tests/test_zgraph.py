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
"""Tests for the zgraph script.
"""
import contextlib
import io
import json
import logging
import os
import sys
import tempfile
import unittest

from zope.component.testing import PlacelessSetup

from zope.graphsolver import zgraph
from zope.graphsolver.cache import ArtifactCache
from zope.graphsolver.harness import load_dataset


class TestBase(PlacelessSetup, unittest.TestCase):

    stdout = None
    stderr = None

    def setUp(self):
        super().setUp()
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        # Create a minimal site.zcml file
        self.config = self.path('site.zcml')
        with open(self.config, 'w') as f:
            f.write(
                """<configure xmlns="http://namespaces.zope.org/zope">
                  <include file="configure.zcml"
                           package="zope.graphsolver" />
                </configure>
                """)
        # basicConfig in the script must not stick to the patched streams
        root = logging.getLogger()
        handlers, level = root.handlers[:], root.level
        self.addCleanup(setattr, root, 'handlers', handlers)
        self.addCleanup(root.setLevel, level)

    def path(self, name):
        return os.path.join(self.tmp.name, name)

    @contextlib.contextmanager
    def patched_stdio(self):
        self.stdout = io.StringIO()
        self.stderr = io.StringIO()

        old_stdout = sys.stdout
        old_stderr = sys.stderr
        sys.stdout = self.stdout
        sys.stderr = self.stderr

        try:
            yield
        finally:
            sys.stdout = old_stdout
            sys.stderr = old_stderr

    def run_main(self, args):
        with self.patched_stdio():
            return zgraph.main(['foo/zgraph'] + args)


class ArgumentParsingTestCase(TestBase):

    def parse_args(self, args):
        argv = ['foo/bar.py'] + args
        with self.patched_stdio():
            options = zgraph.parse_args(argv)

        self.assertEqual(options.program, 'bar.py')
        return options

    def check_stdout_content(self, args):
        with self.assertRaises(SystemExit) as e:
            self.parse_args(args)

        self.assertEqual(e.exception.code, 0)
        self.assertTrue(self.stdout.getvalue())
        self.assertFalse(self.stderr.getvalue())

    def test_command_required(self):
        with self.assertRaises(SystemExit) as e:
            self.parse_args([])
        self.assertEqual(e.exception.code, 2)
        self.assertIn('COMMAND', self.stderr.getvalue())

    def test_version(self):
        self.check_stdout_content(['--version'])

    def test_help(self):
        self.check_stdout_content(['--help'])
        self.check_stdout_content(['eval', '-h'])

    def test_gen_defaults(self):
        options = self.parse_args(['gen', '-t', 'cycle', '-t', 'tsp'])
        self.assertEqual(options.tasks, ['cycle', 'tsp'])
        self.assertEqual((options.count, options.seed), (20, 0))
        self.assertIsNone(options.nodes)
        self.assertIs(options.destination, self.stdout)
        self.assertEqual(options.verbosity, 0)

    def test_run_options(self):
        options = self.parse_args([
            '-q', 'run', 'data.jsonl', '--mode', 'direct', '--no-reuse',
            '--solver-timeout', '2.5', '--workers', '3'])
        self.assertEqual(options.dataset, 'data.jsonl')
        self.assertEqual(options.mode, 'direct')
        self.assertTrue(options.no_reuse)
        self.assertEqual(options.solver_timeout, 2.5)
        self.assertEqual(options.verbosity, -1)

    def test_destination(self):
        path = self.path('out.jsonl')
        options = self.parse_args(['gen', '-t', 'cycle', '-o', path])
        try:
            self.assertEqual(options.destination.name, path)
        finally:
            options.destination.close()

    def test_bad_mode(self):
        with self.assertRaises(SystemExit) as e:
            self.parse_args(['run', 'data.jsonl', '--mode', 'guess'])
        self.assertEqual(e.exception.code, 2)


class ControlFlowTestCase(TestBase):

    def test_main_exit_codes(self):
        self.assertEqual(self.run_main(['--version']), 0)
        self.assertEqual(self.run_main(['frobnicate']), 2)

    def test_keyboard_interrupt(self):
        class Interrupted:
            def __init__(self, options):
                pass

            def process(self):
                raise KeyboardInterrupt

        with self.patched_stdio():
            self.assertEqual(zgraph.main(['zgraph', 'gen', '-t', 'cycle'],
                                         Interrupted), 1)

    def test_system_exit_code(self):
        class Exiting:
            def __init__(self, options):
                pass

            def process(self):
                raise SystemExit(5)

        with self.patched_stdio():
            self.assertEqual(zgraph.main(['zgraph', 'gen', '-t', 'cycle'],
                                         Exiting), 5)


class CommandsTestCase(TestBase):

    def gen(self, *args):
        dataset = self.path('data.jsonl')
        self.assertEqual(self.run_main(['gen', '-o', dataset] + list(args)),
                         0)
        return dataset

    def test_gen(self):
        dataset = self.gen('-t', 'edge_count', '-t', 'cycle', '--count', '3',
                           '-n', '6', '--seed', '4')
        instances = load_dataset(dataset)
        self.assertEqual([inst.task_id for inst in instances],
                         ['edge_count'] * 3 + ['cycle'] * 3)
        self.assertEqual({inst.meta['node_count'] for inst in instances},
                         {6})
        again = self.gen('-t', 'edge_count', '--count', '3', '-n', '6',
                         '--seed', '4')
        self.assertEqual(load_dataset(again), instances[:3])

    def test_gen_to_stdout(self):
        self.assertEqual(self.run_main(['gen', '-t', 'cycle', '--count',
                                        '2']), 0)
        lines = self.stdout.getvalue().splitlines()
        self.assertEqual(len(lines), 2)
        self.assertEqual(json.loads(lines[0])['task_id'], 'cycle')

    def test_unknown_task(self):
        self.assertEqual(self.run_main(['gen', '-t', 'sudoku']), 1)
        self.assertIn("zgraph: error: unknown task 'sudoku'",
                      self.stderr.getvalue())

    def test_eval_run_and_report(self):
        dataset = self.gen('-t', 'shortest_path', '--count', '3')
        results = self.path('results.jsonl')
        cache = self.path('cache')
        self.assertEqual(self.run_main([
            'eval', dataset, '--results', results, '--cache-dir', cache,
            '--workers', '1']), 0)
        table = self.stdout.getvalue()
        self.assertTrue(table.startswith('task '))
        self.assertIn('shortest_path      3     100.0', table)

        self.assertEqual(self.run_main(['report', results]), 0)
        self.assertEqual(self.stdout.getvalue(), table)
        self.assertEqual(self.run_main(['report', results, '--format',
                                        'csv']), 0)
        self.assertIn('shortest_path,3,100.0,0,0,',
                      self.stdout.getvalue())

        # the bundles persist and are found again
        self.assertEqual(len(ArtifactCache(cache).keys()), 2)
        self.assertEqual(self.run_main(['run', dataset, '--cache-dir',
                                        cache]), 0)
        records = [json.loads(line)
                   for line in self.stdout.getvalue().splitlines()]
        self.assertEqual([r['correct'] for r in records], [True] * 3)
        self.assertEqual(sum(r['usage']['calls'] for r in records), 0)

    def test_inspect_cache(self):
        dataset = self.gen('-t', 'shortest_path', '--count', '1')
        cache = self.path('cache')
        self.run_main(['run', dataset, '--cache-dir', cache])
        self.assertEqual(self.run_main(['inspect-cache', cache]), 0)
        keys = self.stdout.getvalue().split()
        self.assertEqual(keys, ArtifactCache(cache).keys())
        self.assertEqual(self.run_main(['inspect-cache', cache, keys[0]]),
                         0)
        listing = self.stdout.getvalue()
        self.assertIn('==> solver.py <==', listing)
        self.assertIn('import heapq', listing)

    def test_inspect_missing(self):
        self.assertEqual(self.run_main(['inspect-cache', self.path('none')]),
                         1)
        self.assertIn('no cache directory', self.stderr.getvalue())
        os.mkdir(self.path('cache'))
        self.assertEqual(self.run_main(['inspect-cache', self.path('cache'),
                                        'abc']), 1)
        self.assertIn('no bundle abc', self.stderr.getvalue())

    def test_missing_dataset(self):
        self.assertEqual(self.run_main(['eval', self.path('none.jsonl')]), 1)
        self.assertIn('zgraph: error: cannot read', self.stderr.getvalue())

    def test_bad_configuration(self):
        dataset = self.gen('-t', 'cycle', '--count', '1')
        config = self.path('graphsolver.ini')
        with open(config, 'w') as f:
            f.write('[graphsolver]\nworkers = none\n')
        self.assertEqual(self.run_main(['-c', config, 'run', dataset]), 1)
        self.assertIn('zgraph: error: workers:', self.stderr.getvalue())

    def test_live_backend_needs_an_endpoint(self):
        dataset = self.gen('-t', 'cycle', '--count', '1')
        self.assertEqual(self.run_main(['run', dataset, '--backend', 'live']),
                         1)
        self.assertIn('endpoint', self.stderr.getvalue())

    def test_site_configuration(self):
        from zope.component import queryUtility

        from zope.graphsolver.interfaces import ITaskSpec
        self.assertEqual(self.run_main(['--zcml', self.config, 'gen', '-t',
                                        'mst', '--count', '1']), 0)
        self.assertIsNotNone(queryUtility(ITaskSpec, 'mst'))

    def test_report_of_missing_results(self):
        self.assertEqual(self.run_main(['report', self.path('none')]), 1)


def test_suite():
    return unittest.defaultTestLoader.loadTestsFromName(__name__)
