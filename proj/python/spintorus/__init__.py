"""Two-spin Heisenberg evolution: Fubini-Study torus geometry and concurrence."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import SpinTorusError, _run_scenario_json, _verify_all_json

__version__ = "0.1.0"


def run_scenario(config):
    """Run a scenario config (dict) and return the run record as a dict."""
    return _json.loads(_run_scenario_json(_json.dumps(config)))


def verify_all(seed=20160315, corrupt_propagator=False):
    """Run the verification battery; returns the report dict."""
    return _json.loads(_verify_all_json(seed, corrupt_propagator))
