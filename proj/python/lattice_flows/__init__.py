"""Integrable lattices: vector fields, Lax pairs, Poisson structures and maps."""

import json as _json

from ._lattice_flows import *  # noqa: F401,F403
from ._lattice_flows import Error, verify_json

__version__ = "0.1.0"


def verify(suite, **options):
    """Run a residual suite and return the parsed report."""
    return _json.loads(verify_json(suite, **options))
