"""Factorization problems in monoids: solvers, reductions and checks."""

from .instances import ChangeInstance, Instance, InstanceError, parse, serialize, validate
from .perm import Permutation, Transformation, compose, power
from .solvers import Verdict, solve

__all__ = [
    "ChangeInstance",
    "Instance",
    "InstanceError",
    "Permutation",
    "Transformation",
    "Verdict",
    "compose",
    "parse",
    "power",
    "serialize",
    "solve",
    "validate",
]

__version__ = "0.1.0"
