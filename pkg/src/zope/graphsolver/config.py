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
"""Configuration files

Settings live in the ``[graphsolver]`` section of an INI file; the
optional ``[prices]`` section maps model ids to the price of a prompt and
of a completion token::

    [graphsolver]
    backend = live
    endpoint = https://llm.example.com/v1/chat/completions
    model_reasoning = o3-mini

    [prices]
    o3-mini = 1.1e-6 4.4e-6

Values are converted and validated with the fields of
`IGraphSolverConfiguration`:

    >>> from zope.graphsolver.config import load_configuration
    >>> configuration = load_configuration(overrides={'workers': '2'})
    >>> configuration.workers, configuration.backend
    (2, 'scripted')
    >>> from zope.graphsolver.interfaces import ConfigurationError
    >>> try:
    ...     load_configuration(overrides={'workers': '0'})
    ... except ConfigurationError as e:
    ...     print(e)
    workers: Value is too small
"""
__docformat__ = 'restructuredtext'

import configparser
import logging
import os

from zope.interface import implementer
from zope.schema import getValidationErrors
from zope.schema.fieldproperty import createFieldProperties
from zope.schema.interfaces import ValidationError

from zope.graphsolver.interfaces import ConfigurationError
from zope.graphsolver.interfaces import IGraphSolverConfiguration


logger = logging.getLogger(__name__)

SECTION = 'graphsolver'
PRICES_SECTION = 'prices'


@implementer(IGraphSolverConfiguration)
class Configuration:
    """Validated graph solver settings."""

    createFieldProperties(IGraphSolverConfiguration)

    def __repr__(self):
        return f'<Configuration backend={self.backend}>'


def _reason(e):
    if isinstance(e, ValidationError):
        return e.doc()
    return str(e)


def _prices(items):
    prices = {}
    for model_id, value in items:
        try:
            p_in, p_out = (float(v) for v in value.split())
        except ValueError:
            raise ConfigurationError(
                f'prices: {model_id!r} needs a prompt and a completion '
                f'price, got {value!r}')
        if p_in < 0 or p_out < 0:
            raise ConfigurationError(
                f'prices: {model_id!r} has a negative price')
        prices[model_id] = f'{p_in!r} {p_out!r}'
    return prices


def set_value(configuration, key, value):
    """Convert a text value with the field for `key` and set it."""
    try:
        field = IGraphSolverConfiguration[key]
    except KeyError:
        raise ConfigurationError(f'unknown configuration key {key!r}')
    try:
        if isinstance(value, str):
            if key == 'prices':
                raise ConfigurationError(
                    'prices belong in the [prices] section')
            value = value.strip()
            if not value and not field.required:
                value = None
            else:
                value = field.bind(configuration).fromUnicode(value)
        setattr(configuration, key, value)
    except (ValidationError, ValueError) as e:
        raise ConfigurationError(f'{key}: {_reason(e)}') from e


def load_configuration(path=None, overrides=None):
    """Read a configuration file, then apply `overrides`.

    Without a path only the defaults and the overrides apply. Override
    values may be text (converted like file values) or field values.
    """
    configuration = Configuration()
    parser = configparser.ConfigParser(interpolation=None)
    # model ids are case sensitive
    parser.optionxform = str
    if path is not None:
        if not os.path.isfile(path):
            raise ConfigurationError(f'no configuration file {path}')
        try:
            parser.read(path, encoding='utf-8')
        except configparser.Error as e:
            raise ConfigurationError(f'{path}: {e}') from e
        logger.info('Read configuration from %s', path)
    unknown = set(parser.sections()) - {SECTION, PRICES_SECTION}
    if unknown:
        raise ConfigurationError(
            f'unknown configuration section {sorted(unknown)[0]!r}')
    values = dict(parser.items(SECTION)) if parser.has_section(
        SECTION) else {}
    values.update(overrides or {})
    for key, value in values.items():
        set_value(configuration, key, value)
    if parser.has_section(PRICES_SECTION):
        prices = dict(configuration.prices or {})
        prices.update(_prices(parser.items(PRICES_SECTION)))
        set_value(configuration, 'prices', prices)
    errors = getValidationErrors(IGraphSolverConfiguration, configuration)
    if errors:
        name, error = errors[0]
        raise ConfigurationError(f'{name}: {_reason(error)}')
    if configuration.backend == 'live' and not configuration.endpoint:
        raise ConfigurationError('endpoint: the live backend needs one')
    return configuration
