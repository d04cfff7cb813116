"""Chebyshev momentum-space solver for Coulomb plus linear bound states."""

import json

from ._chebsie import (
    BoundLevel,
    ChebGrid,
    ConfigError,
    NumericalError,
    airy_reference,
    chebyshev_nodes,
    chebyshev_t,
    hydrogen_energy,
    solve_levels,
    solve_radial,
)
from ._chebsie import run as _run

__all__ = [
    "BoundLevel",
    "ChebGrid",
    "ConfigError",
    "NumericalError",
    "airy_reference",
    "chebyshev_nodes",
    "chebyshev_t",
    "hydrogen_energy",
    "run",
    "solve_levels",
    "solve_radial",
]


def run(config_text: str) -> dict:
    """Run a config document (same grammar as the CLI) and return the report."""
    return json.loads(_run(config_text))
