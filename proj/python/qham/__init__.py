# Copyright 2026 The QHAM Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Quantum Hopfield associative memory toolkit."""

import json as _json

from . import _core
from ._core import (
    ConfigError,
    ContractError,
    DomainError,
    QhamError,
    SizeError,
    __version__,
    activation,
    beta,
    classical_capacity,
    density_accuracy,
    gamma,
    hebbian,
    max_flips,
    phi,
    predicted_counts_rus,
    predicted_counts_simplified,
    qubit_overhead,
    rho_eff,
)


def _config_text(config):
    return config if isinstance(config, str) else _json.dumps(config)


def neuron_sweep(kind="simplified", points=33, **options):
    """Activation sweep over phi; returns {"manifest", "data", ...}."""
    return _json.loads(_core.neuron_sweep_json(kind, points, **options))


def recall(config, **options):
    """Runs a recall config (dict or JSON text)."""
    return _json.loads(_core.recall_json(_config_text(config), **options))


def capacity(config, **options):
    """Monte Carlo capacity reports for a config (dict or JSON text)."""
    return _json.loads(_core.capacity_json(_config_text(config), **options))


def tune_u(config, **options):
    """Accuracy curve over the config's u_range."""
    return _json.loads(_core.tune_u_json(_config_text(config), **options))


def complexity(n="2:8", u="1:4", f="0:2"):
    """Predicted against transpiled gate counts."""
    return _json.loads(_core.complexity_json(n, u, f))


def devices():
    """The device noise registry."""
    return _json.loads(_core.devices_json())
