"""Exact combinatorics of Kottwitz sets and Newton strata for quasi-split groups."""

from .catalog import GroupSpec, adjoint_quotient, build
from .kottwitz import (InternalInvariantError, KottwitzSet, SigmaConjClass, b_of_lambda,
                       basic_class, enumerate_set, inner_twist_translate, join, kappa_G, leq,
                       make_class, minimal_lambda)
from .rootdatum import LeviSubset, Pi1Element, RootDatum

__all__ = [
    "GroupSpec", "adjoint_quotient", "build",
    "InternalInvariantError", "KottwitzSet", "SigmaConjClass", "b_of_lambda", "basic_class",
    "enumerate_set", "inner_twist_translate", "join", "kappa_G", "leq", "make_class",
    "minimal_lambda",
    "LeviSubset", "Pi1Element", "RootDatum",
]
