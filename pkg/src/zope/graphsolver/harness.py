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
"""Datasets, generation, answer checking and evaluation

A dataset file holds one JSON record per line with the keys ``task_id``,
``problem_text``, ``gold_answer`` and ``meta``. A results file written by
`evaluate` holds one JSON record per instance with the keys ``task_id``,
``index``, ``predicted``, ``correct``, ``reason``, ``outcome``, ``usage``
and ``wall_seconds``.

    >>> from zope.graphsolver.harness import generate_instances
    >>> from zope.graphsolver.tasks import get_task
    >>> [inst] = generate_instances(get_task('edge_count'), 1, seed=7, n=6,
    ...                             density=0.4)
    >>> inst.gold_answer
    '6'
    >>> inst.meta['node_count'], inst.meta['seed'], inst.meta['source']
    (6, 7, 'generated')
"""
__docformat__ = 'restructuredtext'

import collections
import concurrent.futures
import csv
import io
import json
import logging
import random
import time

from zope.interface import implementer

from zope.graphsolver.backend import Usage
from zope.graphsolver.backend import account
from zope.graphsolver.checkers import get_checker
from zope.graphsolver.config import Configuration
from zope.graphsolver.interfaces import BackendError
from zope.graphsolver.interfaces import ConfigurationError
from zope.graphsolver.interfaces import DatasetError
from zope.graphsolver.interfaces import ExtractionError
from zope.graphsolver.interfaces import GraphSolverError
from zope.graphsolver.interfaces import IEvalReport
from zope.graphsolver.interfaces import IProblemInstance
from zope.graphsolver.interfaces import MalformedCompletion
from zope.graphsolver.interfaces import PreconditionError
from zope.graphsolver.interfaces import ReportError
from zope.graphsolver.interfaces import SearchBoundExceeded
from zope.graphsolver.interfaces import SolveFailure
from zope.graphsolver.pipeline import Pipeline
from zope.graphsolver.tasks import MAX_WEIGHT
from zope.graphsolver.tasks import get_task


logger = logging.getLogger(__name__)

MODES = ('pipeline', 'direct')

#: Failure categories of an unanswered instance, in report order.
FAILURES = ('nonzero_exit', 'timeout', 'output_overflow', 'spawn_failure',
            'extraction', 'malformed_completion', 'backend_error')

#: Checker kinds needing the graph of the instance.
_STRUCTURAL = ('valid_order', 'valid_path_optimal', 'valid_set_optimal')

COLUMNS = ('task', 'count', 'accuracy', 'wrong', 'failures',
           'time/problem', 'cost/problem')


@implementer(IProblemInstance)
class ProblemInstance:

    def __init__(self, task_id, problem_text, gold_answer=None, meta=None):
        if not task_id:
            raise PreconditionError('empty task id')
        if not problem_text or not problem_text.strip():
            raise PreconditionError('empty problem text')
        self.task_id = task_id
        self.problem_text = problem_text
        self.gold_answer = gold_answer
        self.meta = dict(meta or {})

    def to_dict(self):
        return {'task_id': self.task_id, 'problem_text': self.problem_text,
                'gold_answer': self.gold_answer, 'meta': self.meta}

    @classmethod
    def from_dict(cls, data):
        return cls(data['task_id'], data['problem_text'],
                   data.get('gold_answer'), data.get('meta'))

    def __eq__(self, other):
        if not isinstance(other, ProblemInstance):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self):
        return f'<ProblemInstance {self.task_id} {self.meta.get("index")}>'


def _read_records(path, what):
    try:
        with open(path, encoding='utf-8') as f:
            lines = f.read().splitlines()
    except OSError as e:
        raise DatasetError(f'cannot read {path}: {e.strerror}') from e
    records = []
    for number, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except ValueError as e:
            raise DatasetError(f'not a JSON record: {e}', number) from e
        if not isinstance(record, dict):
            raise DatasetError('not a JSON object', number)
        records.append((number, record))
    if not records:
        raise DatasetError(f'empty {what}')
    return records


def load_dataset(path):
    """Read problem instances, in file order."""
    instances = []
    for number, record in _read_records(path, 'dataset'):
        for key in ('task_id', 'problem_text'):
            if not isinstance(record.get(key), str) or not record[key]:
                raise DatasetError(f'missing {key}', number)
        gold = record.get('gold_answer')
        if gold is not None and not isinstance(gold, str):
            raise DatasetError('gold_answer is not a string', number)
        if not isinstance(record.get('meta', {}), dict):
            raise DatasetError('meta is not an object', number)
        instances.append(ProblemInstance.from_dict(record))
    logger.info('Loaded %d instances from %s', len(instances), path)
    return instances


def dump_dataset(instances, stream):
    for inst in instances:
        stream.write(json.dumps(inst.to_dict(), sort_keys=True) + '\n')


def generate_instances(spec, count, seed, n=None, density=None,
                       max_weight=MAX_WEIGHT):
    """Generate `count` instances of a task from a seed.

    Graphs have exactly ``floor(density * n * (n - 1) / 2)`` edges drawn
    without replacement; the same arguments give the same instances.
    """
    n = spec.nodes if n is None else n
    density = spec.density if density is None else density
    if count < 1:
        raise PreconditionError('count must be positive')
    if n < 2:
        raise PreconditionError('graphs need at least 2 nodes')
    if not 0 < density <= 1:
        raise PreconditionError('density must be in (0, 1]')
    if max_weight < 1:
        raise PreconditionError('max_weight must be positive')
    if spec.max_nodes is not None and n > spec.max_nodes:
        raise SearchBoundExceeded(spec.task_id, spec.max_nodes, n)
    rng = random.Random(seed)
    instances = []
    for index in range(count):
        problem = spec.build(spec.sample_graph(rng, n, density, max_weight),
                             rng)
        instances.append(ProblemInstance(
            spec.task_id, problem['text'], problem['gold'],
            {'node_count': n, 'density': density, 'seed': seed,
             'index': index, 'source': 'generated',
             'query': problem['query']}))
    logger.info('Generated %d %s instances with %d nodes', count,
                spec.task_id, n)
    return instances


def check_answer(spec, predicted, inst):
    """Judge a predicted answer; return ``(correct, reason)``."""
    if inst.task_id != spec.task_id:
        raise PreconditionError(
            f'{spec.task_id} cannot judge a {inst.task_id} instance')
    if inst.gold_answer is None:
        raise PreconditionError('the instance has no gold answer')
    reference = {}
    if spec.checker_kind in _STRUCTURAL:
        reference = spec.reference(inst)
    return get_checker(spec.checker_kind).check(predicted, inst.gold_answer,
                                                reference)


def _check_gold(spec, inst, number):
    # a gold answer has to pass its own checker
    try:
        correct, reason = check_answer(spec, inst.gold_answer, inst)
    except (GraphSolverError, ValueError, TypeError) as e:
        raise DatasetError(
            f'malformed gold answer {inst.gold_answer!r}: {e}', number)
    if not correct:
        raise DatasetError(
            f'gold answer {inst.gold_answer!r} fails its check: {reason}',
            number)


class TaskRow:
    """Results of one task."""

    def __init__(self, task_id, records):
        self.task_id = task_id
        self.count = len(records)
        self.correct = sum(1 for r in records if r['correct'])
        self.failures = collections.Counter(
            r['outcome'] for r in records if r['outcome'] != 'ok')
        self.wrong = self.count - self.correct - sum(self.failures.values())
        self.usage = account(Usage.from_dict(r['usage']) for r in records)
        self.wall_seconds = sum(r['wall_seconds'] for r in records)

    @property
    def accuracy(self):
        return self.correct / self.count

    def __repr__(self):
        return (f'<TaskRow {self.task_id} {self.correct}/{self.count} '
                f'failures={sum(self.failures.values())}>')


@implementer(IEvalReport)
class EvalReport:
    """Per-task and aggregate results of an evaluation."""

    def __init__(self, records):
        if not records:
            raise PreconditionError('a report needs results')
        self.records = list(records)
        by_task = collections.defaultdict(list)
        for record in self.records:
            by_task[record['task_id']].append(record)
        self.rows = [TaskRow(task_id, by_task[task_id])
                     for task_id in sorted(by_task)]

    @property
    def count(self):
        return len(self.records)

    @property
    def correct(self):
        return sum(row.correct for row in self.rows)

    @property
    def usage(self):
        return account(row.usage for row in self.rows)

    @property
    def failures(self):
        return sum((row.failures for row in self.rows),
                   collections.Counter())

    @property
    def wall_seconds(self):
        return sum(row.wall_seconds for row in self.rows)

    def micro_accuracy(self):
        return self.correct / self.count

    def macro_accuracy(self):
        return sum(row.accuracy for row in self.rows) / len(self.rows)

    def __repr__(self):
        return (f'<EvalReport tasks={len(self.rows)} '
                f'accuracy={self.micro_accuracy():.3f}>')


def _failure_category(error):
    if isinstance(error, SolveFailure):
        return error.outcome
    if isinstance(error, ExtractionError):
        return 'extraction'
    if isinstance(error, MalformedCompletion):
        return 'malformed_completion'
    return 'backend_error'


def _attempt(index, inst, spec, mode, pipeline):
    start = time.monotonic()
    usage = Usage()
    try:
        if mode == 'pipeline':
            predicted, _, usage = pipeline.solve(inst)
        else:
            predicted, usage = pipeline.answer_directly(inst)
    except (SolveFailure, ExtractionError, MalformedCompletion,
            BackendError) as e:
        outcome = _failure_category(e)
        logger.warning('Instance %d (%s) failed: %s', index, inst.task_id,
                       e)
        predicted, correct, reason = None, False, outcome
    else:
        outcome = 'ok'
        correct, reason = check_answer(spec, predicted, inst)
    wall_seconds = time.monotonic() - start
    logger.info('Instance %d (%s): %s', index, inst.task_id, reason)
    return {'task_id': inst.task_id, 'index': index,
            'predicted': predicted, 'correct': correct, 'reason': reason,
            'outcome': outcome, 'usage': usage.to_dict(),
            'wall_seconds': wall_seconds}


def evaluate(dataset, mode='pipeline', configuration=None, pipeline=None,
             workers=None):
    """Attempt every instance and judge the answers.

    Configuration problems are raised before any instance runs. Records
    come back in dataset order whatever the number of workers.
    """
    if not dataset:
        raise DatasetError('empty dataset')
    if mode not in MODES:
        raise ConfigurationError(f'unknown mode {mode!r}')
    configuration = configuration or Configuration()
    specs = {}
    for number, inst in enumerate(dataset, 1):
        if inst.gold_answer is None:
            raise DatasetError('instance has no gold answer', number)
        if inst.task_id not in specs:
            specs[inst.task_id] = get_task(inst.task_id)
        _check_gold(specs[inst.task_id], inst, number)
    if pipeline is None:
        pipeline = Pipeline.from_configuration(configuration)
    workers = workers or configuration.workers
    logger.info('Evaluating %d instances in %s mode with %d workers',
                len(dataset), mode, workers)
    with concurrent.futures.ThreadPoolExecutor(workers) as executor:
        futures = [executor.submit(_attempt, index, inst,
                                   specs[inst.task_id], mode, pipeline)
                   for index, inst in enumerate(dataset)]
        records = [future.result() for future in futures]
    return EvalReport(records)


def dump_results(report, stream):
    for record in report.records:
        stream.write(json.dumps(record, sort_keys=True) + '\n')


def load_results(path):
    records = []
    for number, record in _read_records(path, 'results file'):
        missing = {'task_id', 'correct', 'outcome', 'usage',
                   'wall_seconds'} - set(record)
        if missing:
            raise DatasetError(f'missing {sorted(missing)[0]}', number)
        records.append(record)
    return EvalReport(records)


def _failure_text(failures):
    return ' '.join(f'{name}={failures[name]}' for name in FAILURES
                    if failures[name]) or '0'


def _row(task, count, accuracy, wrong, failures, wall_seconds, cost):
    return [task, str(count), f'{accuracy * 100:.1f}', str(wrong),
            _failure_text(failures), f'{wall_seconds / count:.3f}',
            f'{cost / count:.6f}']


def report_rows(report):
    """Header and data rows of a report.

    Micro and macro summary rows follow when there are several tasks.
    """
    rows = [list(COLUMNS)]
    for row in report.rows:
        rows.append(_row(row.task_id, row.count, row.accuracy, row.wrong,
                         row.failures, row.wall_seconds, row.usage.cost))
    if len(report.rows) > 1:
        total = _row('micro', report.count, report.micro_accuracy(),
                     sum(row.wrong for row in report.rows), report.failures,
                     report.wall_seconds, report.usage.cost)
        rows.append(total)
        rows.append(['macro', '', f'{report.macro_accuracy() * 100:.1f}',
                     '', '', '', ''])
    return rows


def format_table(rows):
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = []
    for number, row in enumerate(rows):
        cells = [row[0].ljust(widths[0])] + [
            cell.rjust(width) for cell, width in zip(row[1:], widths[1:])]
        lines.append('  '.join(cells).rstrip())
        if number == 0:
            lines.append('  '.join('-' * width for width in widths))
    return '\n'.join(lines) + '\n'


def format_csv(rows):
    out = io.StringIO()
    csv.writer(out, lineterminator='\n').writerows(rows)
    return out.getvalue()


FORMATS = {'table': format_table, 'csv': format_csv}


def render_report(report, format='table'):
    if format not in FORMATS:
        raise ConfigurationError(f'unknown report format {format!r}')
    return FORMATS[format](report_rows(report))


def write_report(report, path, format='table'):
    """Render a report to a file and return the rendered text."""
    text = render_report(report, format)
    try:
        with open(path, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
    except OSError as e:
        raise ReportError(f'cannot write report {path}: {e.strerror}') from e
    return text
