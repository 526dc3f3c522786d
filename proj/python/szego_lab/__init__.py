import json

from ._core import (
    ConfigError,
    DomainError,
    Error,
    calibrate,
    chain_ratio,
    diagonal_kernel,
    fit_power_law,
    gaussian_J,
    isotype_dimension,
    moment_map,
    multiplicities,
    multiplicity,
    radial_moment,
)
from ._core import run as _run


def run(command, config=None, out=""):
    """Run a szego-lab command. `config` is a dict or None; returns the exit code."""
    return _run(command, json.dumps(config or {}), out)
