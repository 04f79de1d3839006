"""Constructive rigidity tools for Artin and Coxeter groups and l2-Betti
commensurability witnesses for free products of products of free groups."""

from ._kernels import backend
from .graph import GraphError, LabeledGraph, validate_and_load

__version__ = "0.1.0"

__all__ = ["GraphError", "LabeledGraph", "validate_and_load", "backend", "__version__"]
