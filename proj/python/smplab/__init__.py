"""Universal SMP protocols, lattices, planar structure and labeling schemes."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import label_pipeline as _label_pipeline
from ._core import run_experiment as _run_experiment


def run_experiment(config):
    """Run an experiment; `config` is a dict or a JSON string. Returns the report text."""
    return _run_experiment(config if isinstance(config, str) else _json.dumps(config))


def label_pipeline(family, n, k, eps, out_dir, seed=0):
    """Build, write and verify a derandomized labeling. Returns the report as a dict."""
    return _json.loads(_label_pipeline(family, n, k, eps, str(out_dir), seed))
