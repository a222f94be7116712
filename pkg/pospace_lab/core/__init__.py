from pospace_lab.core.enumeration import (
    enumerate_dimaps,
    enumerate_under_maps,
    first_under_map,
    iter_dimaps,
    iter_under_maps,
)
from pospace_lab.core.isomorphism import find_isomorphism, find_under_isomorphism, inverse, is_isomorphism
from pospace_lab.core.pospace import (
    Dimap,
    FinPospace,
    IntervalModel,
    UnderMap,
    UnderPospace,
    ValidationReport,
    absolute,
    anchored,
    as_under,
    chain,
    check_under_map,
    compose,
    constant,
    discrete,
    empty,
    final_map,
    final_object,
    identity,
    initial_map,
    initial_object,
    interval,
    is_dimap,
    terminal,
    under_compose,
    under_identity,
    under_map,
    validate,
)

__all__ = [
    "Dimap",
    "FinPospace",
    "IntervalModel",
    "UnderMap",
    "UnderPospace",
    "ValidationReport",
    "absolute",
    "anchored",
    "as_under",
    "chain",
    "check_under_map",
    "compose",
    "constant",
    "discrete",
    "empty",
    "enumerate_dimaps",
    "enumerate_under_maps",
    "final_map",
    "final_object",
    "find_isomorphism",
    "find_under_isomorphism",
    "first_under_map",
    "identity",
    "initial_map",
    "initial_object",
    "interval",
    "inverse",
    "is_dimap",
    "is_isomorphism",
    "iter_dimaps",
    "iter_under_maps",
    "terminal",
    "under_compose",
    "under_identity",
    "under_map",
    "validate",
]
