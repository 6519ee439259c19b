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
"""Reasoning-then-coding pipeline

A problem text is first turned into a data-free formulation with an
input/output contract (formatting). From the formulation the backend
writes an extractor turning problem texts into standard input
(extracting), designs pseudocode (reasoning) and implements it as a
solver reading standard input (coding). All four artifacts are cached by
task id and by formulation, so later problems of the same type only run
the two programs.
"""
__docformat__ = 'restructuredtext'

import hashlib
import logging
import os
import re
import tempfile

from zope.graphsolver.backend import STAGE_MODELS
from zope.graphsolver.backend import ChatRequest
from zope.graphsolver.backend import Usage
from zope.graphsolver.backend import account
from zope.graphsolver.backend import make_backend
from zope.graphsolver.backend import model_for
from zope.graphsolver.cache import ArtifactCache
from zope.graphsolver.cache import PipelineArtifacts
from zope.graphsolver.cache import Program
from zope.graphsolver.cache import Pseudocode
from zope.graphsolver.graph import ProblemFormulation
from zope.graphsolver.graph import canonical_formulation_hash
from zope.graphsolver.graph import task_cache_key
from zope.graphsolver.interfaces import ExtractionError
from zope.graphsolver.interfaces import IGraphSolverConfiguration
from zope.graphsolver.interfaces import MalformedCompletion
from zope.graphsolver.interfaces import PreconditionError
from zope.graphsolver.interfaces import SolveFailure
from zope.graphsolver.sandbox import EXTRACTOR_LIMITS
from zope.graphsolver.sandbox import SOLVER_LIMITS
from zope.graphsolver.sandbox import ExecutionLimits
from zope.graphsolver.sandbox import Sandbox


logger = logging.getLogger(__name__)

FORMATTING_TEMPLATE = """\
Given a problem description, you need to write input and ouput description \
for this series of problems with different inputs.
Example:
Problem Formulation:
Find the shortest path between two nodes in an undirected graph. In an \
undirected graph, (i,j,k) means that node i and node j are connected with an \
undirected edge with weight k. Given a graph and a pair of nodes, you need to \
output the shortest path between the two nodes. Q: The nodes are numbered \
from 0 to 9, and the edges are: (0,4,2) (0,8,1) (0,7,7) (0,6,3) (0,3,1) \
(3,4,4) (3,7,7) (3,8,1) (3,6,10) (4,5,3) (5,6,3) (6,8,1). Give the weight of \
the shortest path from node 8 to node 5.

Input
The first line contains two integers n and m - the number of vertices and \
the number of edges, respectively.

Then m lines follow. Each line contains three integers u, v and w,  where u \
and v are the vertices connected by an undirected edge, and w is the weight \
of the edge.

The last line contains two integers s and t - the source node s and the \
target node t for which the shortest path distance is to be calculated.

Output
Output a single integer representing the distance of the shortest path from \
node s to node t. If there is no path, print -1.

Now given a problem desciption:
{}

Only output the input and output description in the following format:
Input
<input_description>

Output
<output_description>"""

EXTRACTING_TEMPLATE = """\
Problem Formulation:
{}
Write a Python program that use regular expressions to
1. extract input data from the Problem Description
2. convert the input data to standard input strictly following the Input \
Description below.
Input Description:
{}
Note: 1. The input data in different problems is different, so use regular \
expressions to extract the input data instead of copying directly.
2. Sometimes the node name may contain spaces. Replace the spaces with _ to \
prevent reading errors and ambiguity.
3. Sometimes the node name may contain period ".". Pay attention to this \
when writing the regular expression.
4. Sometimes there may exist example edge like (i,j), remember to remove the \
example edge.
The problem_path and the standard_input_path should be implemented as \
positional arguments of argparse.
Output the Python program in the following format:
```python
<python_code_here>
```"""

PURE_PROBLEM_TEMPLATE = """\
Given a problem description, you need to extract the problem itself by \
substituting data with variables.
Problem Formulation:
{}
Extract Result:
Problem
<extracted_problem>
Input
{}
Output
{}
Now complete the <extracted_problem> part, only output the part in the \
following format:
Pure Problem
<pure_problem_here>"""

REASONING_TEMPLATE = """\
Problem Formulation:
{}
Think step by step, design an efficient algorithm to solve this problem, \
write a corresponding pseudocode.
Reasoning first and summarize your pseudocode in the following format:
Pseudocode
<your pseudocode>"""

CODING_TEMPLATE = """\
Problem Formulation:
{}
Pseudocode:
{}
Write Python code to solve the problem according to the pseudocode.
Only output your Python code in the following format:
```python
<python_code_here>
```"""

REPAIR_TEMPLATE = """
The following program was written for this task but failed ({}, exit code \
{}):
```python
{}
```
Its error output ends with:
{}
Fix the program. Only output your Python code in the format above."""

DIRECT_TEMPLATE = """\
{}
Only output the final answer, without any explanation."""

#: Model ids used when none are configured.
DEFAULT_MODELS = {stage: IGraphSolverConfiguration[name].default
                  for stage, name in STAGE_MODELS.items()}

_fence_re = re.compile(r'```[^\n]*\n(.*?)```', re.S)
_header_re = {
    'Input': re.compile(r'[#*\s]*Input[*:\s]*$'),
    'Output': re.compile(r'[#*\s]*Output[*:\s]*$'),
}
_pure_re = re.compile(r'[#*\s]*Pure Problem[*:]*\s*(.*)$')
_pseudocode_re = re.compile(r'[#*\s]*Pseudocode[*:\s]*$')


def _trim(lines):
    return '\n'.join(lines).strip('\n')


def extract_code_block(text, stage):
    """The content of the last fenced code block of a completion.

    >>> print(extract_code_block('a\\n```\\nx = 1\\n```\\n```python\\n'
    ...                          'print(2)\\n```', 'coding'), end='')
    print(2)
    """
    blocks = _fence_re.findall(text)
    if not blocks:
        raise MalformedCompletion(stage, 'a fenced code block')
    return blocks[-1]


def parse_io_description(text):
    """Split a formatting completion at its Input and Output headers."""
    lines = text.splitlines()
    for i, line in enumerate(lines):
        if not _header_re['Input'].match(line):
            continue
        for j in range(i + 1, len(lines)):
            if _header_re['Output'].match(lines[j]):
                input_description = _trim(lines[i + 1:j])
                output_description = _trim(lines[j + 1:])
                if input_description and output_description:
                    return input_description, output_description
                break
    raise MalformedCompletion('formatting', "'Input' and 'Output' headers")


def parse_pure_problem(text):
    """The text following the last Pure Problem header."""
    lines = text.splitlines()
    for i in range(len(lines) - 1, -1, -1):
        match = _pure_re.match(lines[i])
        if match is not None:
            result = _trim([match.group(1)] + lines[i + 1:])
            if result.strip():
                return result
            break
    raise MalformedCompletion('pure_problem', "a 'Pure Problem' header")


def parse_pseudocode(text):
    """The text following the last Pseudocode header.

    >>> print(parse_pseudocode('Let us think.\\nPseudocode\\n1. a\\n2. b'))
    1. a
    2. b
    """
    lines = text.splitlines()
    for i in range(len(lines) - 1, -1, -1):
        if _pseudocode_re.match(lines[i]):
            result = _trim(lines[i + 1:])
            if not result.strip():
                break
            logger.debug('Discarded %d lines of reasoning', i)
            return result
    raise MalformedCompletion('reasoning', "a 'Pseudocode' header")


def formulation_text(f):
    """A formulation as the text filling prompt slots."""
    return (f'{f.pure_problem}\nInput\n{f.input_description}\n'
            f'Output\n{f.output_description}')


def problem_key(problem_text):
    """Fixture key of a problem without a task id."""
    return hashlib.sha256(problem_text.encode('utf-8')).hexdigest()[:16]


class _Stages:
    """Issues stage requests and keeps a ledger of their usage."""

    def __init__(self, backend, key, models=None, max_tokens=4096,
                 temperature=0.0, ledger=None):
        self.backend = backend
        self.key = key
        self.models = dict(DEFAULT_MODELS, **(models or {}))
        self.max_tokens = max_tokens
        self.temperature = temperature
        self.ledger = ledger if ledger is not None else []

    def ask(self, stage, prompt):
        request = ChatRequest(stage, prompt, self.models[stage],
                              self.max_tokens, self.temperature, self.key)
        logger.info('Running %s stage for %s', stage, self.key)
        logger.debug('%s prompt: %d chars', stage, len(prompt))
        text, usage = self.backend.complete(request)
        self.ledger.append((stage, request.model_id, usage))
        return text

    def provenance(self, start=0):
        result = {}
        for stage, model_id, usage in self.ledger[start:]:
            result.setdefault(stage, []).append(
                {'model_id': model_id, 'usage': usage.to_dict()})
        return result


def _stages(backend, key=None, **options):
    if isinstance(backend, _Stages):
        return backend
    return _Stages(backend, key, **options)


def format_problem(problem_text, backend, key=None, **options):
    """Formulate a problem without its data. Two backend calls."""
    if not problem_text or not problem_text.strip():
        raise PreconditionError('empty problem text')
    stages = _stages(backend, key or problem_key(problem_text), **options)
    input_description, output_description = parse_io_description(
        stages.ask('formatting', FORMATTING_TEMPLATE.format(problem_text)))
    pure_problem = parse_pure_problem(stages.ask(
        'pure_problem', PURE_PROBLEM_TEMPLATE.format(
            problem_text, input_description, output_description)))
    f = ProblemFormulation(pure_problem, input_description,
                           output_description)
    if f.contains_data():
        raise MalformedCompletion('pure_problem',
                                  'a statement free of instance data')
    return f


def build_extractor(f, backend, problem_text=None, key=None, **options):
    """Have the backend write a program extracting standard input.

    The extractor takes the problem file path and the standard input
    output path as positional arguments. `problem_text` is an example
    problem; the pure problem is shown when there is none.
    """
    stages = _stages(backend, key, **options)
    prompt = EXTRACTING_TEMPLATE.format(problem_text or f.pure_problem,
                                        f.input_description)
    source = extract_code_block(stages.ask('extracting', prompt),
                                'extracting')
    return Program(source, 'extractor')


def reason_pseudocode(f, backend, key=None, **options):
    """Have the backend design an algorithm from the formulation alone."""
    stages = _stages(backend, key, **options)
    completion = stages.ask('reasoning',
                            REASONING_TEMPLATE.format(formulation_text(f)))
    return Pseudocode(parse_pseudocode(completion))


def code_solution(f, p, backend, key=None, **options):
    """Have the backend implement the pseudocode as a solver."""
    if p is None or not p.text.strip():
        raise PreconditionError('empty pseudocode')
    stages = _stages(backend, key, **options)
    completion = stages.ask('coding', CODING_TEMPLATE.format(
        formulation_text(f), p.text))
    return Program(extract_code_block(completion, 'coding'), 'solver')


def repair_solution(f, p, failed, err, backend, key=None, **options):
    """Ask for a fixed solver, showing the failed one and its errors."""
    if err.outcome == 'ok':
        raise PreconditionError('cannot repair a successful run')
    stages = _stages(backend, key, **options)
    prompt = CODING_TEMPLATE.format(formulation_text(f), p.text)
    prompt += REPAIR_TEMPLATE.format(err.outcome, err.exit_code,
                                     failed.source, err.stderr_tail())
    completion = stages.ask('repair', prompt)
    return Program(extract_code_block(completion, 'repair'), 'solver')


def build_artifacts(f, backend, problem_text=None, key=None, **options):
    """Extractor, pseudocode and solver for a formulation."""
    stages = _stages(backend, key, **options)
    start = len(stages.ledger)
    extractor = build_extractor(f, stages, problem_text)
    pseudocode = reason_pseudocode(f, stages)
    solver = code_solution(f, pseudocode, stages)
    return PipelineArtifacts(f, extractor, pseudocode, solver,
                             stages.provenance(start))


def run_extractor(extractor, problem_text, sandbox,
                  limits=EXTRACTOR_LIMITS):
    """Run an extractor; return the standard input and the run result."""
    with tempfile.TemporaryDirectory(prefix='graphsolver-problem-') as work:
        problem_path = os.path.join(work, 'problem.txt')
        output_path = os.path.join(work, 'standard_input.txt')
        with open(problem_path, 'w', encoding='utf-8') as f:
            f.write(problem_text)
        result = sandbox.execute(extractor.source, '', limits,
                                 args=(problem_path, output_path))
        if not result.ok:
            raise SolveFailure(f'extractor failed: {result.outcome}',
                               result.outcome, 'extracting', result)
        try:
            with open(output_path, encoding='utf-8') as f:
                standard_input = f.read()
        except FileNotFoundError:
            standard_input = ''
    if not standard_input.strip():
        raise ExtractionError('the extractor produced no standard input')
    return standard_input, result


class _Solving:
    """Runs the solver of some artifacts, repairing it when it fails."""

    def __init__(self, stages, sandbox, limits, code_retries,
                 reason_retries):
        self.stages = stages
        self.sandbox = sandbox
        self.limits = limits
        self.code_retries = code_retries
        self.reason_retries = reason_retries
        self.attempts = 0
        self.wall_seconds = 0.0
        self.start = len(stages.ledger)

    def run(self, program, standard_input):
        self.attempts += 1
        result = self.sandbox.execute(program.source, standard_input,
                                      self.limits)
        self.wall_seconds += result.wall_seconds
        if result.outcome == 'spawn_failure':
            raise SolveFailure('cannot start the solver', result.outcome,
                               'solving', result)
        return result

    def solve(self, artifacts, standard_input):
        """Return the successful run and the artifacts that produced it."""
        f = artifacts.formulation
        pseudocode, program = artifacts.pseudocode, artifacts.solver
        result = self.run(program, standard_input)
        for round in range(self.reason_retries + 1):
            if result.ok:
                break
            if round:
                logger.warning('Regenerating pseudocode for %s after %s',
                               self.stages.key, result.outcome)
                pseudocode = reason_pseudocode(f, self.stages)
                program = code_solution(f, pseudocode, self.stages)
                result = self.run(program, standard_input)
            for _ in range(self.code_retries):
                if result.ok:
                    break
                logger.warning('Repairing solver for %s after %s',
                               self.stages.key, result.outcome)
                program = repair_solution(f, pseudocode, program, result,
                                          self.stages)
                result = self.run(program, standard_input)
        if not result.ok:
            raise SolveFailure(
                f'solver failed after {self.attempts} attempts: '
                f'{result.outcome}', result.outcome, 'solving', result)
        if program is not artifacts.solver:
            provenance = dict(artifacts.provenance)
            for stage, calls in self.stages.provenance(self.start).items():
                provenance[stage] = provenance.get(stage, []) + calls
            artifacts = artifacts.replace(pseudocode=pseudocode,
                                          solver=program,
                                          provenance=provenance)
        return result, artifacts


def solve_instance(inst, cache, backend, sandbox, limits=None,
                   code_retries=2, reason_retries=1, reuse=True,
                   **options):
    """Solve one problem instance.

    Artifacts are looked up by task id first, then by the formulation
    hash after formatting; only a miss on both builds them. `limits` maps
    ``extractor`` and ``solver`` to `ExecutionLimits`. Return the answer
    text, the artifacts and the usage of backend calls plus program runs.
    """
    text = inst.problem_text
    if not text or not text.strip():
        raise PreconditionError('empty problem text')
    limits = dict({'extractor': EXTRACTOR_LIMITS, 'solver': SOLVER_LIMITS},
                  **(limits or {}))
    key = inst.task_id or problem_key(text)
    stages = _Stages(backend, key, **options)
    keys = []

    def build():
        f = format_problem(text, stages)
        formulation_key = canonical_formulation_hash(f)
        keys.append(formulation_key)
        if reuse:
            artifacts = cache.lookup(formulation_key)
            if artifacts is not None:
                logger.info('Reusing artifacts of an equal formulation '
                            'for %s', key)
                return artifacts
        artifacts = build_artifacts(f, stages, text)
        # the formatting calls belong to these artifacts too
        artifacts.provenance.update(stages.provenance())
        if reuse:
            cache.store(formulation_key, artifacts)
        return artifacts

    if reuse:
        task_key = task_cache_key(key)
        artifacts, built = cache.build_once(task_key, build)
        if not built:
            logger.info('Cache hit for %s', key)
    else:
        artifacts = build()
    standard_input, extraction = run_extractor(
        artifacts.extractor, text, sandbox, limits['extractor'])
    solving = _Solving(stages, sandbox, limits['solver'], code_retries,
                       reason_retries)
    result, repaired = solving.solve(artifacts, standard_input)
    if repaired is not artifacts:
        repaired.provenance['attempts'] = solving.attempts
        if reuse:
            cache.store(task_cache_key(key), repaired)
            for formulation_key in keys:
                cache.store(formulation_key, repaired)
        artifacts = repaired
    answer = result.stdout.decode('utf-8', 'replace').rstrip()
    usage = account(usage for _, _, usage in stages.ledger)
    usage = usage + Usage(
        wall_seconds=extraction.wall_seconds + solving.wall_seconds)
    return answer, artifacts, usage


def answer_directly(inst, backend, key=None, **options):
    """Ask the backend for the answer itself, without any program."""
    text = inst.problem_text
    if not text or not text.strip():
        raise PreconditionError('empty problem text')
    stages = _Stages(backend, key or inst.task_id or problem_key(text),
                     **options)
    completion = stages.ask('direct', DIRECT_TEMPLATE.format(text))
    return completion.strip(), account(usage for _, _, usage in
                                       stages.ledger)


class Pipeline:
    """A configured solver for problem instances."""

    def __init__(self, backend, sandbox, cache=None, limits=None,
                 code_retries=2, reason_retries=1, reuse=True, models=None,
                 max_tokens=4096, temperature=0.0):
        self.backend = backend
        self.sandbox = sandbox
        self.cache = cache if cache is not None else ArtifactCache()
        self.limits = limits
        self.code_retries = code_retries
        self.reason_retries = reason_retries
        self.reuse = reuse
        self.options = {'models': models, 'max_tokens': max_tokens,
                        'temperature': temperature}

    @classmethod
    def from_configuration(cls, configuration, backend=None, cache=None):
        if backend is None:
            backend = make_backend(configuration)
        if cache is None:
            cache = ArtifactCache(configuration.cache_dir)
        sandbox = Sandbox(configuration.interpreter, configuration.workers)
        limits = {
            'extractor': ExecutionLimits(configuration.extractor_timeout,
                                         configuration.max_output_bytes,
                                         configuration.max_memory_bytes),
            'solver': ExecutionLimits(configuration.solver_timeout,
                                      configuration.max_output_bytes,
                                      configuration.max_memory_bytes),
        }
        return cls(backend, sandbox, cache, limits,
                   configuration.code_retries, configuration.reason_retries,
                   configuration.reuse,
                   {stage: model_for(configuration, stage)
                    for stage in STAGE_MODELS},
                   configuration.max_tokens, configuration.temperature)

    def solve(self, inst):
        return solve_instance(inst, self.cache, self.backend, self.sandbox,
                              self.limits, self.code_retries,
                              self.reason_retries, self.reuse,
                              **self.options)

    def answer_directly(self, inst):
        return answer_directly(inst, self.backend, **self.options)
