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
"""Graph solver interfaces and errors
"""
import zope.interface
import zope.schema
from zope.schema.vocabulary import SimpleVocabulary


#: Pipeline stages a chat request can belong to.
STAGES = ('formatting', 'pure_problem', 'extracting', 'reasoning',
          'coding', 'repair', 'direct')

#: Classified outcomes of a sandboxed execution.
OUTCOMES = ('ok', 'nonzero_exit', 'timeout', 'output_overflow',
            'spawn_failure')

#: Answer checker kinds.
CHECKER_KINDS = ('yes_no', 'exact_int', 'numeric_tol', 'valid_order',
                 'valid_path_optimal', 'valid_set_optimal',
                 'exact_text_multiline')


class GraphSolverError(Exception):
    """Base class of all errors raised by this package."""


class GraphParseError(GraphSolverError, ValueError):
    """Graph text or standard input could not be parsed."""


class QueryError(GraphSolverError, ValueError):
    """A query does not fit the graph it is asked about."""


class PreconditionError(GraphSolverError, ValueError):
    """An operation was called with arguments violating its contract."""


class OracleError(GraphSolverError):
    """An exact solver cannot answer the question."""


class DisconnectedGraph(OracleError):
    """The question is only defined on connected graphs."""


class SearchBoundExceeded(OracleError):
    """The instance is larger than the exact search supports."""

    def __init__(self, what, bound, actual):
        super().__init__(
            f'{what}: {actual} nodes exceed the exact search bound {bound}')
        self.bound = bound
        self.actual = actual


class SearchTimeout(OracleError):
    """An exact search ran out of its time budget."""

    def __init__(self, what, budget):
        super().__init__(f'{what}: time budget of {budget}s exceeded')
        self.budget = budget


class BackendError(GraphSolverError):
    """A completion backend failed."""


class TransientBackendError(BackendError):
    """A backend failure worth retrying."""


class FixtureMissing(BackendError):
    """The scripted backend has no completion for a request."""

    def __init__(self, stage, key):
        super().__init__(f'no fixture for stage {stage!r} and key {key!r}')
        self.stage = stage
        self.key = key


class MalformedCompletion(GraphSolverError):
    """A completion lacks the sentinel or code block a stage needs."""

    def __init__(self, stage, missing):
        super().__init__(f'{stage} completion is missing {missing}')
        self.stage = stage
        self.missing = missing


class SandboxError(GraphSolverError):
    """A program could not be run at all."""


class ExtractionError(GraphSolverError):
    """The extractor produced no standard input."""


class SolveFailure(GraphSolverError):
    """The pipeline could not produce an answer for an instance."""

    def __init__(self, message, outcome, stage, result=None):
        super().__init__(message)
        self.outcome = outcome
        self.stage = stage
        self.result = result


class DatasetError(GraphSolverError):
    """A dataset file is malformed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f'line {line}: {message}'
        super().__init__(message)
        self.line = line


class ReportError(GraphSolverError):
    """A report or results file cannot be written."""


class ConfigurationError(GraphSolverError):
    """The configuration is invalid."""


class IGraph(zope.interface.Interface):
    """An immutable graph with optional integer weights and node labels."""

    directed = zope.schema.Bool(title='Directed', readonly=True)
    node_count = zope.schema.Int(title='Number of nodes', min=0,
                                 readonly=True)
    offset = zope.schema.Int(
        title='Index of the first node in the source text', min=0,
        readonly=True)
    labels = zope.interface.Attribute(
        'Tuple of normalized node names, or None for numbered nodes')
    edges = zope.interface.Attribute(
        'Sorted tuple of (u, v, weight) triples, weight None if unweighted')

    weighted = zope.interface.Attribute('True when edges carry weights')

    def has_edge(u, v):
        """Is there an edge from u to v (either direction if undirected)?"""

    def neighbors(u):
        """Return the ascending tuple of successors of u."""


class IProblemFormulation(zope.interface.Interface):
    """A data-free statement of a problem plus its I/O contract."""

    pure_problem = zope.schema.Text(title='Pure problem', min_length=1)
    input_description = zope.schema.Text(title='Input description',
                                         min_length=1)
    output_description = zope.schema.Text(title='Output description',
                                          min_length=1)


class IOracleAnswer(zope.interface.Interface):
    """An exact answer computed by an oracle."""

    kind = zope.schema.Choice(
        title='Kind of answer',
        values=('boolean', 'integer', 'node', 'node_set', 'node_sequence',
                'value_with_witness'))
    value = zope.interface.Attribute('The payload')
    witness = zope.interface.Attribute(
        'Path, set, order, tree or mapping supporting the value, or None')


class ITaskSpec(zope.interface.Interface):
    """A benchmark task family."""

    task_id = zope.schema.ASCIILine(title='Task id')
    checker_kind = zope.schema.Choice(title='Checker kind',
                                      values=CHECKER_KINDS)
    directed = zope.schema.Bool(title='Generated graphs are directed')
    weighted = zope.schema.Bool(title='Generated graphs are weighted')
    nodes = zope.schema.Int(title='Default node count', min=2)
    density = zope.schema.Float(title='Default edge density', min=0.0,
                                max=1.0)
    max_nodes = zope.schema.Int(
        title='Largest node count the exact solver supports',
        required=False)

    def sample_graph(rng, n, density, max_weight):
        """Return a random graph (or graph pair) suitable for this task."""

    def build(subject, rng):
        """Build a problem about a sampled graph.

        Return a dict with the problem ``text``, the ``gold`` answer text,
        the canonical ``standard_input`` and the ``query`` node names.
        """

    def reference(instance):
        """Return what answer checkers need to judge an instance."""


class IAnswerChecker(zope.interface.Interface):
    """Judges a predicted answer text."""

    kind = zope.schema.Choice(title='Checker kind', values=CHECKER_KINDS)

    def check(predicted, gold, reference):
        """Judge `predicted` against the gold answer text.

        `reference` carries what validity checks need (the graph and the
        path end points, for instance). Return a ``(correct, reason)``
        pair. Never raise on malformed predictions.
        """


class IChatBackend(zope.interface.Interface):
    """A text completion backend."""

    def complete(request):
        """Complete a chat request.

        Return ``(text, usage)``; the text is returned unmodified.
        """


class IChatBackendFactory(zope.interface.Interface):
    """Creates a chat backend from a configuration."""

    def __call__(configuration):
        """Return an IChatBackend."""


class ISandbox(zope.interface.Interface):
    """Runs generated programs as isolated child processes."""

    def execute(program_source, stdin_data, limits, args=()):
        """Run the program and return an execution result."""


class IPipelineArtifacts(zope.interface.Interface):
    """Everything the pipeline generated for one problem type."""

    formulation = zope.schema.Object(title='Formulation',
                                     schema=IProblemFormulation)
    extractor = zope.interface.Attribute('Extractor program')
    pseudocode = zope.interface.Attribute('Pseudocode')
    solver = zope.interface.Attribute('Solver program')
    provenance = zope.interface.Attribute(
        'Mapping of stage name to model id and usage')
    created_at = zope.interface.Attribute('Creation timestamp (ISO 8601)')


class IArtifactCache(zope.interface.Interface):
    """Maps cache keys to pipeline artifacts."""

    def lookup(key):
        """Return the artifacts stored for key or None."""

    def store(key, artifacts):
        """Store artifacts under key."""

    def build_once(key, factory):
        """Return the artifacts for key, calling factory at most once.

        Concurrent callers for a key being built wait for the first.
        Return ``(artifacts, built)``.
        """


class IProblemInstance(zope.interface.Interface):
    """One benchmark item."""

    task_id = zope.schema.TextLine(title='Task id', min_length=1)
    problem_text = zope.schema.Text(title='Problem text', min_length=1)
    gold_answer = zope.schema.Text(title='Gold answer', required=False)
    meta = zope.schema.Dict(title='Metadata', required=False)


class IEvalReport(zope.interface.Interface):
    """Aggregated evaluation results."""

    rows = zope.interface.Attribute('Per-task result rows, sorted by task')

    def micro_accuracy():
        """Correct answers over all instances."""

    def macro_accuracy():
        """Mean of per-task accuracies."""


class IGraphSolverConfiguration(zope.interface.Interface):
    """Settings read from the ``[graphsolver]`` configuration section."""

    backend = zope.schema.Choice(
        title='Completion backend',
        vocabulary=SimpleVocabulary.fromValues(('scripted', 'live')),
        default='scripted')
    endpoint = zope.schema.URI(
        title='Chat completion endpoint', required=False)
    api_key_env = zope.schema.ASCIILine(
        title='Environment variable holding the credential',
        default='GRAPHSOLVER_API_KEY')
    model_formatting = zope.schema.TextLine(default='gpt-4o-mini')
    model_extracting = zope.schema.TextLine(default='gpt-4o-mini')
    model_reasoning = zope.schema.TextLine(default='o3-mini')
    model_coding = zope.schema.TextLine(default='gpt-4o-mini')
    model_direct = zope.schema.TextLine(default='gpt-4o-mini')
    temperature = zope.schema.Float(min=0.0, default=0.0)
    max_tokens = zope.schema.Int(min=1, default=4096)
    retries = zope.schema.Int(min=0, default=3)
    backoff = zope.schema.Float(min=0.0, default=1.0)
    request_timeout = zope.schema.Float(min=0.0, default=120.0)
    max_concurrent_requests = zope.schema.Int(min=1, default=4)
    fixtures = zope.schema.TextLine(
        title='Directory of scripted fixtures', required=False)
    scripted_latency = zope.schema.Float(min=0.0, default=0.0)
    interpreter = zope.schema.TextLine(
        title='Interpreter command with a {program} placeholder',
        required=False)
    extractor_timeout = zope.schema.Float(min=0.001, default=30.0)
    solver_timeout = zope.schema.Float(min=0.001, default=60.0)
    max_output_bytes = zope.schema.Int(min=1, default=8 * 1024 * 1024)
    max_memory_bytes = zope.schema.Int(min=1, required=False)
    workers = zope.schema.Int(min=1, default=4)
    code_retries = zope.schema.Int(min=0, default=2)
    reason_retries = zope.schema.Int(min=0, default=1)
    reuse = zope.schema.Bool(default=True)
    cache_dir = zope.schema.TextLine(required=False)
    prices = zope.schema.Dict(
        title='Model id to (prompt, completion) price per token',
        key_type=zope.schema.TextLine(),
        required=False)
