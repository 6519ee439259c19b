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
"""Implementation of the zgraph script.
"""

import argparse
import logging
import os
import sys
from importlib.metadata import PackageNotFoundError
from importlib.metadata import version

from zope.graphsolver.cache import ArtifactCache
from zope.graphsolver.config import load_configuration
from zope.graphsolver.harness import FORMATS
from zope.graphsolver.harness import MODES
from zope.graphsolver.harness import dump_dataset
from zope.graphsolver.harness import dump_results
from zope.graphsolver.harness import evaluate
from zope.graphsolver.harness import generate_instances
from zope.graphsolver.harness import load_dataset
from zope.graphsolver.harness import load_results
from zope.graphsolver.harness import render_report
from zope.graphsolver.interfaces import GraphSolverError
from zope.graphsolver.tasks import get_task


try:
    VERSION = version('zope.graphsolver')
except PackageNotFoundError:  # pragma: no cover
    VERSION = 'unknown'

logger = logging.getLogger(__name__)


def main(argv=None, app_factory=None):
    """Top-level script function to generate and evaluate graph problems."""
    argv = sys.argv if argv is None else argv

    try:
        options = parse_args(argv)
    except SystemExit as e:
        if e.code:
            return 2
        return 0

    return run_app_with_options(options, app_factory)


def run_app_with_options(options, app_factory=None):
    app = Application if app_factory is None else app_factory
    app = app(options)
    try:
        return app.process()
    except KeyboardInterrupt:
        return 1
    except SystemExit as e:
        return e.code


def configure_logging(verbosity):
    level = {-1: logging.ERROR, 0: logging.WARNING, 1: logging.INFO}.get(
        verbosity, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')


class Application:

    def __init__(self, options):
        self.options = options

    def process(self):
        options = self.options
        configure_logging(options.verbosity)
        destination = options.destination
        try:
            if options.zcml:
                load_site_configuration(options.zcml)
            getattr(self, 'do_' + options.command.replace('-', '_'))()
        except GraphSolverError as e:
            print(f'{options.program}: error: {e}', file=sys.stderr)
            return 1
        finally:
            if destination is not sys.stdout:
                destination.close()
        return 0

    def configuration(self):
        options = self.options
        overrides = {}
        for name in ('backend', 'cache_dir', 'fixtures', 'workers',
                     'extractor_timeout', 'solver_timeout'):
            value = getattr(options, name, None)
            if value is not None:
                overrides[name] = value
        if getattr(options, 'no_reuse', False):
            overrides['reuse'] = False
        return load_configuration(options.config, overrides)

    def do_gen(self):
        options = self.options
        instances = []
        for task_id in options.tasks:
            instances.extend(generate_instances(
                get_task(task_id), options.count, options.seed,
                options.nodes, options.density, options.max_weight))
        dump_dataset(instances, options.destination)

    def run(self):
        options = self.options
        dataset = load_dataset(options.dataset)
        report = evaluate(dataset, options.mode, self.configuration())
        logger.info('Solved %d of %d instances', report.correct,
                    report.count)
        return report

    def do_run(self):
        dump_results(self.run(), self.options.destination)

    def do_eval(self):
        report = self.run()
        if self.options.results:
            with open(self.options.results, 'w', encoding='utf-8') as f:
                dump_results(report, f)
        self.options.destination.write(
            render_report(report, self.options.format))

    def do_report(self):
        report = load_results(self.options.results_file)
        self.options.destination.write(
            render_report(report, self.options.format))

    def do_inspect_cache(self):
        options = self.options
        if not os.path.isdir(options.cache):
            print(f'{options.program}: no cache directory {options.cache}',
                  file=sys.stderr)
            sys.exit(1)
        cache = ArtifactCache(options.cache)
        out = options.destination
        if options.key is None:
            for key in cache.keys():
                print(key, file=out)
            return
        files = cache.bundle_files(options.key)
        if files is None:
            print(f'{options.program}: no bundle {options.key}',
                  file=sys.stderr)
            sys.exit(1)
        for name, content in files.items():
            print(f'==> {name} <==', file=out)
            print(content.rstrip('\n'), file=out)


def load_site_configuration(path):
    from zope.configuration import xmlconfig

    logger.info('Loading site configuration %s', path)
    xmlconfig.file(path)


def _add_run_options(p):
    p.add_argument('dataset', help='dataset file, one JSON record per line')
    p.add_argument('--mode', choices=MODES, default='pipeline',
                   help='solve with generated programs or ask directly')
    p.add_argument('--backend', choices=('scripted', 'live'),
                   help='completion backend (from the configuration by'
                        ' default)')
    p.add_argument('--fixtures', metavar='DIR',
                   help='directory of scripted completions')
    p.add_argument('--cache-dir', dest='cache_dir', metavar='DIR',
                   help='persist generated artifacts in DIR')
    p.add_argument('--no-reuse', dest='no_reuse', action='store_true',
                   help='build the artifacts of every instance afresh')
    p.add_argument('--extractor-timeout', dest='extractor_timeout',
                   type=float, metavar='SECONDS')
    p.add_argument('--solver-timeout', dest='solver_timeout', type=float,
                   metavar='SECONDS')
    p.add_argument('--workers', type=int, metavar='N',
                   help='instances evaluated at the same time')


def _add_output(p, what):
    p.add_argument('-o', '--output', dest='destination', metavar='FILE',
                   help=f'the file in which the {what} will be saved'
                        ' (STDOUT by default)',
                   default=sys.stdout, type=argparse.FileType('w'))


def parse_args(argv):
    """Parse the command line, returning an object representing the input."""
    prog = os.path.split(os.path.realpath(argv[0]))[1]
    p = argparse.ArgumentParser(
        prog=prog, description='Solve graph problems stated in natural'
                               ' language by generating programs.')
    p.add_argument('-c', '--config', dest='config', metavar='FILE',
                   help='configuration file ([graphsolver] section)')
    p.add_argument('--zcml', dest='zcml', metavar='FILE',
                   help='site.zcml registering task specs and checkers')
    p.add_argument('-v', '--verbose', dest='verbosity', action='count',
                   default=0, help='log more (repeatable)')
    p.add_argument('-q', '--quiet', dest='verbosity', action='store_const',
                   const=-1, help='only log errors')
    p.add_argument('--version', action='version', version=VERSION)
    commands = p.add_subparsers(dest='command', required=True,
                                metavar='COMMAND')

    gen = commands.add_parser('gen', help='generate a dataset')
    gen.add_argument('-t', '--task', dest='tasks', action='append',
                     required=True, metavar='TASK',
                     help='task id (repeatable)')
    gen.add_argument('-n', '--nodes', type=int, metavar='N',
                     help='nodes per graph (task default otherwise)')
    gen.add_argument('-p', '--density', type=float)
    gen.add_argument('--max-weight', dest='max_weight', type=int,
                     default=100)
    gen.add_argument('--count', type=int, default=20)
    gen.add_argument('--seed', type=int, default=0)
    _add_output(gen, 'dataset')

    run = commands.add_parser('run', help='solve a dataset, write results')
    _add_run_options(run)
    _add_output(run, 'results')

    evaluate_ = commands.add_parser(
        'eval', help='solve a dataset and print a report')
    _add_run_options(evaluate_)
    evaluate_.add_argument('--results', metavar='FILE',
                           help='also save the results in FILE')
    evaluate_.add_argument('--format', choices=sorted(FORMATS),
                           default='table')
    _add_output(evaluate_, 'report')

    report = commands.add_parser('report', help='report on a results file')
    report.add_argument('results_file', metavar='RESULTS')
    report.add_argument('--format', choices=sorted(FORMATS),
                        default='table')
    _add_output(report, 'report')

    inspect = commands.add_parser(
        'inspect-cache', help='list cache keys or show a bundle')
    inspect.add_argument('cache', metavar='DIR')
    inspect.add_argument('key', nargs='?')
    _add_output(inspect, 'listing')

    options = p.parse_args(argv[1:])
    options.program = prog
    return options
