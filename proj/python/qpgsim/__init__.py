# Copyright (c) 2026 the qpgsim authors.
# SPDX-License-Identifier: MIT
"""Simulator and verification toolkit for hybridly protected holonomic gates.

The heavy lifting lives in the C++ extension; this package adds a small
dict-based convenience wrapper around the JSON-string interface.
"""

import json as _json

from ._qpgsim import (
    ConfigError,
    __version__,
    catalog_gates,
    default_config,
    expected_matrix,
    logical_matrix,
    noise_sweep,
    process_fidelity,
    run_experiment,
)

__all__ = [
    "ConfigError",
    "__version__",
    "catalog_gates",
    "default_config",
    "expected_matrix",
    "logical_matrix",
    "noise_sweep",
    "process_fidelity",
    "run_experiment",
    "run",
]


def run(experiment, **overrides):
    """Run an experiment with keyword overrides of the default config.

    Top-level config keys are replaced wholesale (a ``qrm=...`` override
    must therefore carry every field it wants to change); the report is
    returned as a dict.
    """
    config = _json.loads(default_config())
    for key, value in overrides.items():
        if key not in config:
            raise ConfigError("unknown config key '%s'" % key)
        if isinstance(config[key], dict) and isinstance(value, dict):
            config[key].update(value)
        else:
            config[key] = value
    config["experiment"] = experiment
    return _json.loads(run_experiment(_json.dumps(config)))
