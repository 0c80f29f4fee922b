"""Scenario file parsing.

Files are INI-style `key = value` lines with `#` comments and no sections.
"""

import logging

from noonflow.channels.channel_models import ChannelEvaluator
from noonflow.models import ScenarioConfig
from noonflow.utils.errors import ConfigError, DomainError

logger = logging.getLogger(__name__)

RATE_KEYS = ('gamma1', 'gamma2', 'gamma0', 'lambda', 'delta', 'omega', 'omega0')
INT_KEYS = ('n', 'steps', 'M')
FLOAT_KEYS = ('phi', 't_max') + RATE_KEYS
BOOL_KEYS = ('strict',)
KNOWN_KEYS = ('channel',) + INT_KEYS + FLOAT_KEYS + BOOL_KEYS
REQUIRED_KEYS = ('channel', 'n', 't_max', 'steps')

_TRUE = {'true', 'yes', 'on', '1'}
_FALSE = {'false', 'no', 'off', '0'}


def _convert(key, raw, line):
    try:
        if key in INT_KEYS:
            return int(raw)
        if key in FLOAT_KEYS:
            return float(raw)
    except ValueError:
        raise ConfigError(f"'{key}' expects a number, got '{raw}'", line) from None

    if key in BOOL_KEYS:
        lowered = raw.lower()
        if lowered in _TRUE:
            return True
        if lowered in _FALSE:
            return False
        raise ConfigError(f"'{key}' expects true/false, got '{raw}'", line)
    return raw


def parse_config(text):
    """Parse and validate a scenario file body into a ScenarioConfig"""
    values, lines = {}, {}

    for number, raw_line in enumerate(text.splitlines(), start=1):
        content = raw_line.split('#', 1)[0].strip()
        if not content:
            continue
        if '=' not in content:
            raise ConfigError(f"expected 'key = value', got '{content}'", number)

        key, raw = (part.strip() for part in content.split('=', 1))
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown key '{key}'", number)
        if key in values:
            raise ConfigError(f"duplicate key '{key}' (first set on line {lines[key]})", number)
        if not raw:
            raise ConfigError(f"'{key}' has no value", number)

        values[key] = _convert(key, raw, number)
        lines[key] = number

    for key in REQUIRED_KEYS:
        if key not in values:
            raise ConfigError(f"missing required key '{key}'")

    if values['steps'] < 2:
        raise ConfigError('steps ≥ 2 required', lines['steps'])
    if values['t_max'] <= 0:
        raise ConfigError('t_max must be positive', lines['t_max'])
    if values['n'] < 1:
        raise ConfigError('n must be ≥ 1', lines['n'])
    if values.get('M', 1) < 1:
        raise ConfigError('M must be ≥ 1', lines['M'])

    rates = {key: values[key] for key in RATE_KEYS if key in values}
    try:
        ChannelEvaluator.build_channel_model(values['channel'], rates)
    except DomainError as exc:
        raise ConfigError(str(exc), lines.get('channel')) from None

    config = ScenarioConfig(
        channel=values['channel'].strip().lower(),
        n=values['n'],
        t_max=values['t_max'],
        steps=values['steps'],
        rates=rates,
        phi=values.get('phi', 0.0),
        M=values.get('M', 1),
        strict=values.get('strict', False),
    )
    logger.debug('parsed scenario %s', config)
    return config


def load_config_file(path):
    """Read and parse a scenario file; returns (config, None) or (None, error message)"""
    try:
        with open(path, encoding='utf-8') as handle:
            text = handle.read()
    except OSError as exc:
        return None, f"cannot read config '{path}': {exc.strerror or exc}"

    try:
        return parse_config(text), None
    except ConfigError as exc:
        return None, f'{path}: {exc}'
