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
"""Running generated programs in child processes

Each run gets a fresh temporary directory, a scrubbed environment and its
own process group, which is killed as a whole when the run ends. This is
not a security boundary against malicious code.
"""
__docformat__ = 'restructuredtext'

import logging
import os
import shlex
import signal
import subprocess
import sys
import tempfile
import threading
import time

from zope.interface import implementer

from zope.graphsolver.interfaces import ISandbox
from zope.graphsolver.interfaces import PreconditionError


try:
    import resource
except ModuleNotFoundError:  # pragma: no cover
    resource = None


logger = logging.getLogger(__name__)

#: Environment variables passed on to child processes.
ENV_ALLOWLIST = ('PATH', 'LANG', 'LC_ALL', 'LC_CTYPE', 'SYSTEMROOT', 'TZ')

CHUNK_SIZE = 65536


class ExecutionLimits:

    def __init__(self, wall_timeout_seconds, max_output_bytes=8 * 1024 * 1024,
                 max_memory_bytes=None):
        if wall_timeout_seconds <= 0:
            raise PreconditionError('the wall timeout must be positive')
        if max_output_bytes <= 0:
            raise PreconditionError('the output limit must be positive')
        if max_memory_bytes is not None and max_memory_bytes <= 0:
            raise PreconditionError('the memory limit must be positive')
        self.wall_timeout_seconds = wall_timeout_seconds
        self.max_output_bytes = max_output_bytes
        self.max_memory_bytes = max_memory_bytes

    def __repr__(self):
        return (f'<ExecutionLimits {self.wall_timeout_seconds}s '
                f'{self.max_output_bytes} bytes>')


EXTRACTOR_LIMITS = ExecutionLimits(30.0)
SOLVER_LIMITS = ExecutionLimits(60.0)


class ExecutionResult:

    def __init__(self, outcome, stdout=b'', stderr=b'', exit_code=None,
                 wall_seconds=0.0, memory_limited=False):
        self.outcome = outcome
        self.stdout = stdout
        self.stderr = stderr
        self.exit_code = exit_code
        self.wall_seconds = wall_seconds
        self.memory_limited = memory_limited

    @property
    def ok(self):
        return self.outcome == 'ok'

    def stderr_tail(self, size=2000):
        return self.stderr[-size:].decode('utf-8', 'replace')

    def __repr__(self):
        return (f'<ExecutionResult {self.outcome} exit={self.exit_code} '
                f'{self.wall_seconds:.3f}s>')


class _Capture(threading.Thread):
    """Drains a pipe, keeping at most `limit` bytes."""

    def __init__(self, stream, limit, on_overflow):
        super().__init__(daemon=True)
        self.stream = stream
        self.limit = limit
        self.on_overflow = on_overflow
        self.data = bytearray()
        self.overflowed = False

    def run(self):
        while True:
            chunk = self.stream.read1(CHUNK_SIZE)
            if not chunk:
                break
            room = self.limit - len(self.data)
            if len(chunk) > room:
                self.data.extend(chunk[:room])
                if not self.overflowed:
                    self.overflowed = True
                    self.on_overflow()
            else:
                self.data.extend(chunk)
        self.stream.close()


def _feed(stream, data):
    try:
        stream.write(data)
    except (BrokenPipeError, OSError):
        pass
    finally:
        try:
            stream.close()
        except OSError:
            pass


def _kill_group(process):
    try:
        os.killpg(process.pid, signal.SIGKILL)
    except (ProcessLookupError, PermissionError):
        pass


def scrubbed_environment(allowlist=ENV_ALLOWLIST):
    env = {name: os.environ[name] for name in allowlist
           if name in os.environ}
    env['PYTHONIOENCODING'] = 'utf-8'
    env['PYTHONDONTWRITEBYTECODE'] = '1'
    return env


@implementer(ISandbox)
class Sandbox:
    """Executes programs with an interpreter command.

    The interpreter command has a ``{program}`` placeholder for the
    program path. At most `workers` children run at the same time.
    """

    def __init__(self, interpreter=None, workers=4,
                 env_allowlist=ENV_ALLOWLIST):
        if interpreter is None:
            interpreter = shlex.quote(sys.executable) + ' {program}'
        if '{program}' not in interpreter:
            raise PreconditionError(
                'the interpreter command has no {program} placeholder')
        self.interpreter = interpreter
        self.env_allowlist = env_allowlist
        self._slots = threading.BoundedSemaphore(workers)

    def command(self, program_path, args=()):
        return [part.replace('{program}', program_path)
                for part in shlex.split(self.interpreter)] + list(args)

    def execute(self, program_source, stdin_data, limits, args=()):
        with self._slots:
            with tempfile.TemporaryDirectory(prefix='graphsolver-') as work:
                path = os.path.join(work, 'program.py')
                with open(path, 'w', encoding='utf-8') as f:
                    f.write(program_source)
                return self._run(self.command(path, args), work,
                                 stdin_data, limits)

    def _limit_memory(self, limits):
        if limits.max_memory_bytes is None:
            return None, False
        if resource is None:
            logger.warning('Memory limiting is not available here')
            return None, False

        def limit():
            size = limits.max_memory_bytes
            resource.setrlimit(resource.RLIMIT_AS, (size, size))
        return limit, True

    def _run(self, command, work, stdin_data, limits):
        logger.debug('Running %s', command)
        preexec, memory_limited = self._limit_memory(limits)
        start = time.monotonic()
        try:
            process = subprocess.Popen(
                command, cwd=work, env=scrubbed_environment(
                    self.env_allowlist),
                stdin=subprocess.PIPE, stdout=subprocess.PIPE,
                stderr=subprocess.PIPE, start_new_session=True,
                preexec_fn=preexec)
        except OSError as e:
            logger.warning('Cannot start %s: %s', command[0], e)
            return ExecutionResult('spawn_failure', stderr=str(e).encode(),
                                   wall_seconds=time.monotonic() - start)

        def overflow():
            _kill_group(process)

        readers = [_Capture(process.stdout, limits.max_output_bytes,
                            overflow),
                   _Capture(process.stderr, limits.max_output_bytes,
                            overflow)]
        for reader in readers:
            reader.start()
        if isinstance(stdin_data, str):
            stdin_data = stdin_data.encode('utf-8')
        feeder = threading.Thread(target=_feed,
                                  args=(process.stdin, stdin_data or b''),
                                  daemon=True)
        feeder.start()
        timed_out = False
        try:
            process.wait(timeout=limits.wall_timeout_seconds)
        except subprocess.TimeoutExpired:
            timed_out = True
        # descendants share the group and must not outlive the run
        _kill_group(process)
        process.wait()
        for reader in readers:
            reader.join()
        feeder.join()
        elapsed = time.monotonic() - start
        stdout, stderr = (bytes(reader.data) for reader in readers)
        if timed_out:
            outcome = 'timeout'
        elif any(reader.overflowed for reader in readers):
            outcome = 'output_overflow'
        elif process.returncode != 0:
            outcome = 'nonzero_exit'
        else:
            outcome = 'ok'
        exit_code = None if timed_out else process.returncode
        logger.debug('%s finished: %s in %.3fs', command[0], outcome,
                     elapsed)
        return ExecutionResult(outcome, stdout, stderr, exit_code, elapsed,
                               memory_limited)
