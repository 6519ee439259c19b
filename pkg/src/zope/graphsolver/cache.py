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
"""Pipeline artifacts and their cache

A persistent cache is a directory with one bundle directory per key::

    <digest>/formulation.json
    <digest>/extractor.py
    <digest>/pseudocode.txt
    <digest>/solver.py
    <digest>/provenance.json
"""
__docformat__ = 'restructuredtext'

import datetime
import json
import logging
import os
import shutil
import tempfile
import threading

from zope.interface import implementer

from zope.graphsolver.graph import ProblemFormulation
from zope.graphsolver.interfaces import IArtifactCache
from zope.graphsolver.interfaces import IPipelineArtifacts
from zope.graphsolver.interfaces import PreconditionError


logger = logging.getLogger(__name__)

BUNDLE_FILES = ('formulation.json', 'extractor.py', 'pseudocode.txt',
                'solver.py', 'provenance.json')


class Program:

    def __init__(self, source, kind):
        if kind not in ('extractor', 'solver'):
            raise PreconditionError(f'unknown program kind {kind!r}')
        if not source.strip():
            raise PreconditionError(f'empty {kind} program')
        self.source = source
        self.kind = kind

    def __eq__(self, other):
        if not isinstance(other, Program):
            return NotImplemented
        return (self.source, self.kind) == (other.source, other.kind)

    def __repr__(self):
        return f'<Program {self.kind} {len(self.source)} chars>'


class Pseudocode:

    def __init__(self, text):
        if not text or not text.strip():
            raise PreconditionError('empty pseudocode')
        self.text = text

    def __eq__(self, other):
        if not isinstance(other, Pseudocode):
            return NotImplemented
        return self.text == other.text

    def __repr__(self):
        return f'<Pseudocode {len(self.text)} chars>'


def now():
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


@implementer(IPipelineArtifacts)
class PipelineArtifacts:
    """Formulation, programs and pseudocode for one problem type.

    `provenance` maps stage names to the model id and usage of the calls
    that produced the artifacts.
    """

    def __init__(self, formulation, extractor, pseudocode, solver,
                 provenance=None, created_at=None):
        self.formulation = formulation
        self.extractor = extractor
        self.pseudocode = pseudocode
        self.solver = solver
        self.provenance = provenance if provenance is not None else {}
        self.created_at = created_at or now()

    def replace(self, **changes):
        values = {name: getattr(self, name) for name in (
            'formulation', 'extractor', 'pseudocode', 'solver',
            'provenance', 'created_at')}
        values.update(changes)
        return PipelineArtifacts(**values)

    def to_files(self):
        """Bundle file name to content."""
        return {
            'formulation.json': json.dumps(
                self.formulation.to_dict(), indent=2, sort_keys=True) + '\n',
            'extractor.py': self.extractor.source,
            'pseudocode.txt': self.pseudocode.text,
            'solver.py': self.solver.source,
            'provenance.json': json.dumps(
                {'created_at': self.created_at,
                 'stages': self.provenance}, indent=2, sort_keys=True) + '\n',
        }

    @classmethod
    def from_files(cls, files):
        provenance = json.loads(files['provenance.json'])
        return cls(
            ProblemFormulation.from_dict(
                json.loads(files['formulation.json'])),
            Program(files['extractor.py'], 'extractor'),
            Pseudocode(files['pseudocode.txt']),
            Program(files['solver.py'], 'solver'),
            provenance['stages'], provenance['created_at'])

    def __eq__(self, other):
        if not isinstance(other, PipelineArtifacts):
            return NotImplemented
        return self.to_files() == other.to_files()

    def __repr__(self):
        return f'<PipelineArtifacts created {self.created_at}>'


def _write_bundle(directory, files):
    # the bundle appears complete under its final name or not at all
    parent = os.path.dirname(directory)
    tmp = tempfile.mkdtemp(dir=parent, prefix='.tmp-')
    try:
        for name, content in files.items():
            with open(os.path.join(tmp, name), 'w', encoding='utf-8',
                      newline='') as f:
                f.write(content)
        old = None
        if os.path.isdir(directory):
            old = tmp + '-old'
            os.rename(directory, old)
        os.rename(tmp, directory)
    except BaseException:
        shutil.rmtree(tmp, ignore_errors=True)
        raise
    if old is not None:
        shutil.rmtree(old, ignore_errors=True)


@implementer(IArtifactCache)
class ArtifactCache:
    """In-memory cache, persisted to `path` when one is given.

    Reads are concurrent and never hold a lock during disk I/O; writes
    are serialized. A bundle directory that lacks a file is a miss.
    `build_once` runs the factory for a key at most once at a time:
    other requesters for the same key wait and then see the stored
    result.
    """

    def __init__(self, path=None):
        self.path = path
        self._entries = {}
        self._building = {}
        self._lock = threading.Lock()
        self._write_lock = threading.Lock()
        if path is not None:
            os.makedirs(path, exist_ok=True)

    def _bundle(self, key):
        return os.path.join(self.path, str(key))

    def _load(self, key):
        directory = self._bundle(key)
        if not os.path.isdir(directory):
            return None
        files = {}
        for name in BUNDLE_FILES:
            try:
                with open(os.path.join(directory, name), encoding='utf-8',
                          newline='') as f:
                    files[name] = f.read()
            except FileNotFoundError:
                logger.warning('Ignoring incomplete bundle %s without %s',
                               key[:12], name)
                return None
        return PipelineArtifacts.from_files(files)

    def lookup(self, key):
        key = str(key)
        with self._lock:
            artifacts = self._entries.get(key)
        if artifacts is None and self.path is not None:
            artifacts = self._load(key)
            if artifacts is not None:
                with self._lock:
                    artifacts = self._entries.setdefault(key, artifacts)
        logger.debug('Cache %s for %s', 'hit' if artifacts else 'miss',
                     key[:12])
        return artifacts

    def store(self, key, artifacts):
        key = str(key)
        with self._write_lock:
            if self.path is not None:
                _write_bundle(self._bundle(key), artifacts.to_files())
            with self._lock:
                self._entries[key] = artifacts

    def build_once(self, key, factory):
        key = str(key)
        while True:
            artifacts = self.lookup(key)
            if artifacts is not None:
                return artifacts, False
            with self._lock:
                # stored while we were reading
                artifacts = self._entries.get(key)
                if artifacts is not None:
                    return artifacts, False
                event = self._building.get(key)
                owner = event is None
                if owner:
                    event = self._building[key] = threading.Event()
            if not owner:
                event.wait()
                continue
            try:
                artifacts = factory()
                self.store(key, artifacts)
                return artifacts, True
            finally:
                with self._lock:
                    del self._building[key]
                event.set()

    def keys(self):
        with self._lock:
            keys = set(self._entries)
        if self.path is not None:
            keys.update(name for name in os.listdir(self.path)
                        if not name.startswith('.')
                        and os.path.isdir(os.path.join(self.path, name)))
        return sorted(keys)

    def bundle_files(self, key):
        """The bundle of a key as file name to content, or None."""
        artifacts = self.lookup(key)
        return None if artifacts is None else artifacts.to_files()
