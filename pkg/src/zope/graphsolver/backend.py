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
"""Text completion backends

Two backends implement `IChatBackend`: a scripted one answering from
fixture files ``<key>.<stage>.txt`` and a live one posting to a chat
completion endpoint.

    >>> from zope.graphsolver.backend import ChatRequest, ScriptedBackend
    >>> backend = ScriptedBackend({('reasoning', 'demo'): 'Pseudocode\\n1.'})
    >>> text, usage = backend.complete(
    ...     ChatRequest('reasoning', 'Design it.', 'o3-mini', key='demo'))
    >>> print(text)
    Pseudocode
    1.
    >>> usage.cost
    0.0
"""
__docformat__ = 'restructuredtext'

import logging
import os
import threading
import time

import requests
from zope.component import queryUtility
from zope.interface import implementer
from zope.interface import provider

from zope.graphsolver.interfaces import STAGES
from zope.graphsolver.interfaces import BackendError
from zope.graphsolver.interfaces import ConfigurationError
from zope.graphsolver.interfaces import FixtureMissing
from zope.graphsolver.interfaces import IChatBackend
from zope.graphsolver.interfaces import IChatBackendFactory
from zope.graphsolver.interfaces import PreconditionError
from zope.graphsolver.interfaces import TransientBackendError


logger = logging.getLogger(__name__)

#: Stage to configuration attribute naming its model.
STAGE_MODELS = {
    'formatting': 'model_formatting',
    'pure_problem': 'model_formatting',
    'extracting': 'model_extracting',
    'reasoning': 'model_reasoning',
    'coding': 'model_coding',
    'repair': 'model_coding',
    'direct': 'model_direct',
}


class ChatRequest:

    def __init__(self, stage, prompt, model_id, max_tokens=4096,
                 temperature=0.0, key=None):
        if stage not in STAGES:
            raise PreconditionError(f'unknown stage {stage!r}')
        if not prompt:
            raise PreconditionError('empty prompt')
        if max_tokens < 1:
            raise PreconditionError('max_tokens must be positive')
        if temperature < 0:
            raise PreconditionError('temperature must not be negative')
        self.stage = stage
        self.prompt = prompt
        self.model_id = model_id
        self.max_tokens = max_tokens
        self.temperature = temperature
        self.key = key

    def __repr__(self):
        return (f'<ChatRequest {self.stage} model={self.model_id} '
                f'key={self.key} prompt={len(self.prompt)} chars>')


class Usage:
    """Tokens, time and money spent on backend calls."""

    fields = ('prompt_tokens', 'completion_tokens', 'wall_seconds', 'cost',
              'calls', 'truncations')

    def __init__(self, prompt_tokens=0, completion_tokens=0,
                 wall_seconds=0.0, cost=0.0, calls=0, truncations=0):
        self.prompt_tokens = prompt_tokens
        self.completion_tokens = completion_tokens
        self.wall_seconds = wall_seconds
        self.cost = cost
        self.calls = calls
        self.truncations = truncations
        if any(value < 0 for value in self.as_tuple()):
            raise PreconditionError('usage fields must not be negative')

    def as_tuple(self):
        return tuple(getattr(self, name) for name in self.fields)

    def to_dict(self):
        return dict(zip(self.fields, self.as_tuple()))

    @classmethod
    def from_dict(cls, data):
        return cls(**{name: data[name] for name in cls.fields if name in data})

    def __add__(self, other):
        if not isinstance(other, Usage):
            return NotImplemented
        return Usage(*(a + b for a, b in zip(self.as_tuple(),
                                             other.as_tuple())))

    def __eq__(self, other):
        if not isinstance(other, Usage):
            return NotImplemented
        return self.as_tuple() == other.as_tuple()

    def __repr__(self):
        return ('<Usage calls={0.calls} tokens={0.prompt_tokens}+'
                '{0.completion_tokens} {0.wall_seconds:.3f}s '
                'cost={0.cost:.6f}>'.format(self))


def account(usages):
    """Field-wise sum of usages.

    >>> account([])
    <Usage calls=0 tokens=0+0 0.000s cost=0.000000>
    >>> account([Usage(1, 2, 0.5, 0, 1), Usage(3, 4, 0.25, 0, 1)])
    <Usage calls=2 tokens=4+6 0.750s cost=0.000000>
    """
    total = Usage()
    for usage in usages:
        total = total + usage
    return total


class PriceTable:
    """Prices per prompt and completion token by model id.

    >>> prices = PriceTable({'m': '1e-7 4e-7'})
    >>> round(prices.cost('m', 1000, 500), 12)
    0.0003
    """

    def __init__(self, prices=None):
        self.prices = {}
        for model_id, value in (prices or {}).items():
            if isinstance(value, str):
                value = value.split()
            p_in, p_out = (float(v) for v in value)
            self.prices[model_id] = (p_in, p_out)
        self._warned = set()

    def cost(self, model_id, prompt_tokens, completion_tokens):
        if model_id not in self.prices:
            if model_id not in self._warned:
                self._warned.add(model_id)
                logger.warning('No price configured for model %s',
                               model_id)
            return 0.0
        p_in, p_out = self.prices[model_id]
        return prompt_tokens * p_in + completion_tokens * p_out


def model_for(configuration, stage):
    """The model id the configuration assigns to a stage."""
    return getattr(configuration, STAGE_MODELS[stage])


@implementer(IChatBackend)
class ScriptedBackend:
    """Answers from fixtures keyed by stage and key.

    `fixtures` is either a directory holding ``<key>.<stage>.txt`` files
    or a mapping of ``(stage, key)`` to completion text. A list value is
    served one item per call, repeating the last one.
    """

    def __init__(self, fixtures, latency=0.0):
        self.fixtures = fixtures
        self.latency = latency
        self.calls = []
        self._positions = {}
        self._lock = threading.Lock()

    def _lookup(self, stage, key):
        if isinstance(self.fixtures, (str, os.PathLike)):
            path = os.path.join(self.fixtures, f'{key}.{stage}.txt')
            try:
                with open(path, encoding='utf-8', newline='') as f:
                    return f.read()
            except FileNotFoundError:
                raise FixtureMissing(stage, key)
        try:
            value = self.fixtures[(stage, key)]
        except KeyError:
            raise FixtureMissing(stage, key)
        if isinstance(value, (list, tuple)):
            with self._lock:
                position = self._positions.get((stage, key), 0)
                self._positions[(stage, key)] = position + 1
            value = value[min(position, len(value) - 1)]
        return value

    def complete(self, request):
        start = time.monotonic()
        with self._lock:
            self.calls.append((request.stage, request.key))
        text = self._lookup(request.stage, request.key)
        if self.latency:
            time.sleep(self.latency)
        usage = Usage(len(request.prompt.split()), len(text.split()),
                      time.monotonic() - start, 0.0, 1)
        logger.debug('Scripted %s completion for %s: %d chars',
                     request.stage, request.key, len(text))
        return text, usage


@implementer(IChatBackend)
class LiveBackend:
    """Posts chat completion requests to an HTTP endpoint.

    Only `TransientBackendError` failures (connection problems, timeouts,
    rate limiting and server errors) are retried, with exponential
    backoff.
    """

    def __init__(self, endpoint, api_key, prices=None, retries=3,
                 backoff=1.0, timeout=120.0, max_concurrent=4,
                 session=None):
        if not endpoint:
            raise ConfigurationError('the live backend needs an endpoint')
        self.endpoint = endpoint
        self._api_key = api_key
        self.prices = prices if prices is not None else PriceTable()
        self.retries = retries
        self.backoff = backoff
        self.timeout = timeout
        self.session = session if session is not None else requests.Session()
        self._slots = threading.BoundedSemaphore(max_concurrent)

    def __repr__(self):
        return f'<LiveBackend {self.endpoint}>'

    def _post(self, request):
        payload = {
            'model': request.model_id,
            'messages': [{'role': 'user', 'content': request.prompt}],
            'max_tokens': request.max_tokens,
            'temperature': request.temperature,
        }
        headers = {'Authorization': f'Bearer {self._api_key}',
                   'Content-Type': 'application/json'}
        try:
            response = self.session.post(self.endpoint, json=payload,
                                         headers=headers,
                                         timeout=self.timeout)
        except (requests.ConnectionError, requests.Timeout) as e:
            raise TransientBackendError(f'{type(e).__name__}: {e}') from e
        status = response.status_code
        if status == 429 or status >= 500:
            raise TransientBackendError(f'HTTP {status}')
        if status in (401, 403):
            raise BackendError(f'HTTP {status}: authentication failed')
        if status >= 400:
            raise BackendError(f'HTTP {status}: {response.text[:200]}')
        try:
            return response.json()
        except ValueError as e:
            raise BackendError(f'response is not JSON: {e}') from e

    def complete(self, request):
        start = time.monotonic()
        with self._slots:
            for attempt in range(self.retries + 1):
                try:
                    data = self._post(request)
                    break
                except TransientBackendError as e:
                    if attempt == self.retries:
                        raise BackendError(
                            f'{request.stage} request failed after '
                            f'{self.retries} retries: {e}') from e
                    delay = self.backoff * 2 ** attempt
                    logger.warning('%s request failed (%s), retrying in '
                                   '%.1fs', request.stage, e, delay)
                    time.sleep(delay)
        try:
            choice = data['choices'][0]
            text = choice['message']['content'] or ''
        except (KeyError, IndexError, TypeError) as e:
            raise BackendError(f'unexpected response layout: {e!r}') from e
        truncated = choice.get('finish_reason') == 'length'
        if truncated:
            logger.warning('%s completion was truncated at %d tokens',
                           request.stage, request.max_tokens)
        tokens = data.get('usage') or {}
        prompt_tokens = tokens.get('prompt_tokens', 0)
        completion_tokens = tokens.get('completion_tokens', 0)
        usage = Usage(
            prompt_tokens, completion_tokens, time.monotonic() - start,
            self.prices.cost(request.model_id, prompt_tokens,
                             completion_tokens),
            1, int(truncated))
        logger.debug('%s completion from %s: %d chars', request.stage,
                     request.model_id, len(text))
        return text, usage


def default_fixtures():
    return os.path.join(os.path.dirname(__file__), 'fixtures')


@provider(IChatBackendFactory)
def scripted_backend_factory(configuration):
    return ScriptedBackend(configuration.fixtures or default_fixtures(),
                           configuration.scripted_latency)


@provider(IChatBackendFactory)
def live_backend_factory(configuration):
    api_key = os.environ.get(configuration.api_key_env)
    if not api_key:
        raise ConfigurationError(
            f'environment variable {configuration.api_key_env} holding the '
            f'credential is not set')
    return LiveBackend(
        configuration.endpoint, api_key,
        PriceTable(configuration.prices), configuration.retries,
        configuration.backoff, configuration.request_timeout,
        configuration.max_concurrent_requests)


# Simple registry
factories = [
    ('scripted', scripted_backend_factory),
    ('live', live_backend_factory),
]


def make_backend(configuration, name=None):
    """Create the backend a configuration selects."""
    name = name or configuration.backend
    factory = queryUtility(IChatBackendFactory, name)
    if factory is None:
        factory = dict(factories).get(name)
    if factory is None:
        raise ConfigurationError(f'unknown backend {name!r}')
    return factory(configuration)
