"""Conditional simple temporal networks with uncertainty.

Thin wrappers over the C++ core. Rationals come back as strings such as
``"3/2"``; use :func:`to_fraction` to turn them into ``fractions.Fraction``.
"""

import json
from fractions import Fraction

from . import _core
from ._core import (
    CapExceeded,
    EmbeddingError,
    Error,
    InvalidNetwork,
    IoError,
    Label,
    Network,
    ParseError,
    PreconditionError,
    enumerate_universe,
)

__all__ = [
    "CapExceeded", "EmbeddingError", "Error", "InvalidNetwork", "IoError", "Label", "Network",
    "ParseError", "PreconditionError", "check_dc", "compile_workflow", "enumerate_universe",
    "label_modification", "load_network", "network_from_dict", "project", "propagate", "solve",
    "to_fraction", "validate", "verify_strategy",
]


def to_fraction(value):
    return Fraction(value)


def network_from_dict(doc):
    return Network.from_json(json.dumps(doc))


def load_network(path):
    with open(path, encoding="utf-8") as f:
        return Network.from_json(f.read())


def validate(network):
    return json.loads(network.validate())


def solve(network):
    return json.loads(_core.solve(network))


def project(network, scenario="", situation=None):
    if situation is not None and not isinstance(situation, str):
        situation = ",".join(str(d) for d in situation)
    return json.loads(_core.project(network, scenario, situation))


def propagate(network, budget=10000):
    return json.loads(_core.propagate(network, budget))


def label_modification(network, edge, target):
    return json.loads(_core.label_modification(network, edge, target))


def check_dc(network, duration_samples=3, time_candidates=3, node_budget=200000, seed=0, jobs=1):
    return json.loads(_core.check_dc(network, duration_samples, time_candidates, node_budget, seed, jobs))


def verify_strategy(network, strategy):
    if not isinstance(strategy, str):
        strategy = json.dumps(strategy)
    return json.loads(_core.verify_strategy(network, strategy))


def compile_workflow(text):
    network, mapping = _core.compile_workflow(text)
    return network, json.loads(mapping)
