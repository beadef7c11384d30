"""Synthesis and analysis of CMC-1 surfaces in hyperbolic and de Sitter space.

Every entry point accepts a config as a path, a JSON string or a dict.
Reports are returned as dicts with the same layout as the command-line tool.
"""

import json
import os

from . import _core
from ._core import ConfigError, DomainError, NumericError, __version__

__all__ = [
    "ConfigError",
    "DomainError",
    "NumericError",
    "analyze",
    "coverage",
    "lift",
    "monodromy",
    "omitted_values",
    "synth",
    "validate",
]


def _text(config):
    if isinstance(config, dict):
        return json.dumps(config)
    if isinstance(config, os.PathLike) or (isinstance(config, str) and not config.lstrip().startswith("{")):
        with open(config, encoding="utf-8") as fh:
            return fh.read()
    return config


def validate(config, tolerance_scale=0.0):
    return json.loads(_core.validate(_text(config), tolerance_scale))


def analyze(config, tolerance_scale=0.0):
    return json.loads(_core.analyze(_text(config), tolerance_scale))


def coverage(config, tolerance_scale=0.0):
    return json.loads(_core.coverage(_text(config), tolerance_scale))


def synth(config, chart=""):
    """Meshes (dicts of numpy arrays) for every lift chart, plus the report."""
    meshes, report = _core.synth(_text(config), chart)
    return meshes, json.loads(report)


def lift(config, z):
    return _core.lift(_text(config), complex(z))


def monodromy(config, center, radius):
    return _core.monodromy(_text(config), complex(center), float(radius))


def omitted_values(config):
    return _core.omitted_values(_text(config))
