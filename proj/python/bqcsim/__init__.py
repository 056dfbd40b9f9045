# Copyright 2026 The bqcsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Two-server blind quantum computing simulator."""

import json

from ._core import (
    chsh_threshold,
    chsh_verdict,
    chsh_win_probability,
    classical_order,
    factor,
    hofmann_bounds,
    ideal_pass_probability,
)
from . import _core

__all__ = [
    "chsh_threshold",
    "chsh_verdict",
    "chsh_win_probability",
    "classical_order",
    "factor",
    "hofmann_bounds",
    "ideal_pass_probability",
    "run_experiment",
    "sweep",
]


def _settings(kwargs):
    return {k: str(v) for k, v in kwargs.items()}


def run_experiment(**settings):
    """Runs one experiment and returns its report as a dict.

    Keyword names are the configuration keys, e.g. scenario="alice-x3",
    n_rounds=4000, seed=7, bob_offset_deg=20.
    """
    return json.loads(_core._run_experiment_json(_settings(settings)))


def sweep(parameter, grid, **settings):
    """Returns [{"value": v, "report": {...}}, ...] for each grid value."""
    return json.loads(_core._sweep_json(parameter, [float(g) for g in grid], _settings(settings)))
