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
"""Sandbox Tests

These run real child processes with the current interpreter.
"""
import os
import sys
import time
import unittest
from unittest import mock

from zope.interface.verify import verifyObject

from zope.graphsolver.interfaces import ISandbox
from zope.graphsolver.interfaces import PreconditionError
from zope.graphsolver.sandbox import ExecutionLimits
from zope.graphsolver.sandbox import ExecutionResult


ECHO = '''\
import sys
data = sys.stdin.read()
print(data.upper(), end='')
'''

FAIL = '''\
import sys
print('partial')
sys.stderr.write('boom\\n')
sys.exit(3)
'''

SLEEP = '''\
import time
time.sleep(30)
'''

FLOOD = '''\
import sys
while True:
    sys.stdout.write('x' * 4096)
'''

SPAWN = '''\
import subprocess
import sys
command = [sys.executable, '-c', 'import time; time.sleep(60)']
child = subprocess.Popen(command)
print(child.pid, flush=True)
'''

ENVIRONMENT = '''\
import os
import sys
print(os.environ.get('GRAPHSOLVER_SECRET', '-'))
print(os.getcwd())
print(' '.join(sys.argv[1:]))
'''

ALLOCATE = '''\
block = bytearray(1 << 30)
print(len(block))
'''


def alive(pid):
    """Is the process running (zombies count as dead)?"""
    try:
        with open(f'/proc/{pid}/stat') as f:
            state = f.read().rsplit(')', 1)[1].split()[0]
    except FileNotFoundError:
        return False
    return state not in ('Z', 'X')


class TestExecutionLimits(unittest.TestCase):

    def test_invalid_limits(self):
        self.assertRaises(PreconditionError, ExecutionLimits, 0)
        self.assertRaises(PreconditionError, ExecutionLimits, 1, 0)
        self.assertRaises(PreconditionError, ExecutionLimits, 1, 10, -1)

    def test_defaults(self):
        from zope.graphsolver.sandbox import EXTRACTOR_LIMITS
        from zope.graphsolver.sandbox import SOLVER_LIMITS
        self.assertEqual(EXTRACTOR_LIMITS.wall_timeout_seconds, 30.0)
        self.assertEqual(SOLVER_LIMITS.wall_timeout_seconds, 60.0)


class TestExecutionResult(unittest.TestCase):

    def test_stderr_tail(self):
        result = ExecutionResult('nonzero_exit', stderr=b'a' * 10 + b'\xff')
        self.assertFalse(result.ok)
        self.assertEqual(result.stderr_tail(3), 'aa\ufffd')


class TestSandbox(unittest.TestCase):

    limits = ExecutionLimits(10.0)

    def _make_one(self, *args, **kw):
        from zope.graphsolver.sandbox import Sandbox
        return Sandbox(*args, **kw)

    def test_interface_compliance(self):
        verifyObject(ISandbox, self._make_one())

    def test_interpreter_needs_placeholder(self):
        self.assertRaises(PreconditionError, self._make_one, 'python3')

    def test_stdin_and_stdout(self):
        result = self._make_one().execute(ECHO, 'né 1\n', self.limits)
        self.assertEqual(result.outcome, 'ok')
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.stdout.decode('utf-8'), 'NÉ 1\n')
        self.assertGreater(result.wall_seconds, 0)

    def test_nonzero_exit(self):
        result = self._make_one().execute(FAIL, b'', self.limits)
        self.assertEqual(result.outcome, 'nonzero_exit')
        self.assertEqual(result.exit_code, 3)
        self.assertEqual(result.stdout, b'partial\n')
        self.assertEqual(result.stderr_tail(), 'boom\n')

    def test_syntax_error(self):
        result = self._make_one().execute('def (:\n', b'', self.limits)
        self.assertEqual(result.outcome, 'nonzero_exit')
        self.assertIn('SyntaxError', result.stderr_tail())

    def test_timeout(self):
        start = time.monotonic()
        result = self._make_one().execute(SLEEP, b'', ExecutionLimits(0.5))
        self.assertEqual(result.outcome, 'timeout')
        self.assertIsNone(result.exit_code)
        self.assertLess(time.monotonic() - start, 10)

    def test_output_overflow(self):
        result = self._make_one().execute(
            FLOOD, b'', ExecutionLimits(10.0, max_output_bytes=10000))
        self.assertEqual(result.outcome, 'output_overflow')
        self.assertEqual(len(result.stdout), 10000)

    def test_spawn_failure(self):
        sandbox = self._make_one('/nonexistent/interpreter {program}')
        result = sandbox.execute(ECHO, b'', self.limits)
        self.assertEqual(result.outcome, 'spawn_failure')
        self.assertIsNone(result.exit_code)

    def test_environment_directory_and_arguments(self):
        with mock.patch.dict(os.environ, {'GRAPHSOLVER_SECRET': 'hush'}):
            result = self._make_one().execute(
                ENVIRONMENT, b'', self.limits, args=('in.txt', 'out.txt'))
        secret, cwd, args = result.stdout.decode().splitlines()
        self.assertEqual(secret, '-')
        self.assertEqual(args, 'in.txt out.txt')
        self.assertIn('graphsolver-', cwd)
        self.assertFalse(os.path.exists(cwd))

    def test_allowlisted_variables_pass(self):
        with mock.patch.dict(os.environ, {'GRAPHSOLVER_SECRET': 'shared'}):
            sandbox = self._make_one(env_allowlist=('GRAPHSOLVER_SECRET',))
            result = sandbox.execute(ENVIRONMENT, b'', self.limits)
        self.assertEqual(result.stdout.decode().splitlines()[0], 'shared')

    @unittest.skipUnless(sys.platform.startswith('linux'), 'needs /proc')
    def test_descendants_are_killed(self):
        result = self._make_one().execute(SPAWN, b'', self.limits)
        self.assertEqual(result.outcome, 'ok')
        pid = int(result.stdout.split()[0])
        deadline = time.monotonic() + 5
        while alive(pid) and time.monotonic() < deadline:
            time.sleep(0.05)
        self.assertFalse(alive(pid))

    @unittest.skipUnless(sys.platform.startswith('linux'), 'needs rlimits')
    def test_memory_limit(self):
        limits = ExecutionLimits(10.0, max_memory_bytes=256 * 1024 * 1024)
        result = self._make_one().execute(ALLOCATE, b'', limits)
        self.assertEqual(result.outcome, 'nonzero_exit')
        self.assertTrue(result.memory_limited)
        self.assertIn('MemoryError', result.stderr_tail())

    def test_concurrent_runs(self):
        from concurrent.futures import ThreadPoolExecutor
        sandbox = self._make_one(workers=2)
        with ThreadPoolExecutor(4) as pool:
            results = list(pool.map(
                lambda i: sandbox.execute(ECHO, f'run {i}', self.limits),
                range(4)))
        self.assertEqual([r.stdout for r in results],
                         [f'RUN {i}'.encode() for i in range(4)])


def test_suite():
    return unittest.defaultTestLoader.loadTestsFromName(__name__)
