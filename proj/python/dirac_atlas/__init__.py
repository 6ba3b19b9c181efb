"""Discrete-series classification, spin modules, K-theory and norm laboratories."""

import json

from . import _core
from ._core import (
    NumericalAmbiguity,
    ValidationError,
    character_dimension,
    fredholm_index,
    pair_names,
    schema_names,
    wedderburn_blocks,
    weyl_dimension,
    weyl_group_order,
)

__all__ = [
    "NumericalAmbiguity",
    "ValidationError",
    "character_dimension",
    "dirac_induct",
    "enumerate_discrete_series",
    "fredholm_index",
    "pair_names",
    "reduced_norm",
    "root_system",
    "run",
    "schema",
    "schema_names",
    "wedderburn_blocks",
    "weyl_dimension",
    "weyl_group_order",
]


def run(*args):
    """Run the command line in-process. Returns (exit_code, stdout, stderr)."""
    return _core.run([str(a) for a in args])


def schema(name):
    return json.loads(_core.schema(name))


def root_system(cartan_type):
    return json.loads(_core.root_system_json(cartan_type))


def dirac_induct(pair, highest_weight, degree_roots="positive"):
    return json.loads(_core.dirac_induct_json(pair, highest_weight, degree_roots))


def enumerate_discrete_series(pair, bound):
    return json.loads(_core.enumerate_json(pair, str(bound)))


def reduced_norm(group, function, radius):
    """function: list of {word|vector|element, re, im} entries."""
    return _core.reduced_norm(group, json.dumps(function), radius)
