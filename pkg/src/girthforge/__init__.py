"""High-girth cover graphs of uniquely generated posets, with exact certificates.

Modules: ``graph`` (cycles, girth), ``monotone`` (label-increasing paths),
``independence`` (independent sets, exact chromatic number), ``poset``
(cover DAGs, unique generation, greedy coloring), ``construction`` (layered
random graphs and their repair), ``curves`` (grounded curves realizing
height-2 posets), ``probability`` (seeded Monte Carlo against exact
expectations), ``formats`` and ``cli``.
"""

__version__ = "0.1.0"

from .errors import (
    BadPairsPresent,
    ChainOfThree,
    CycleCapExceeded,
    GirthforgeError,
    InstanceTooLarge,
    InsufficientSurvivors,
    NotUniquelyGenerated,
    ParameterError,
    ParseError,
    RealizationError,
)
from .graph import Graph, count_short_cycles, girth
from .poset import CoverDag, Poset, greedy_color, is_uniquely_generated

__all__ = [
    "BadPairsPresent",
    "ChainOfThree",
    "CoverDag",
    "CycleCapExceeded",
    "GirthforgeError",
    "Graph",
    "InstanceTooLarge",
    "InsufficientSurvivors",
    "NotUniquelyGenerated",
    "ParameterError",
    "ParseError",
    "Poset",
    "RealizationError",
    "count_short_cycles",
    "girth",
    "greedy_color",
    "is_uniquely_generated",
]
