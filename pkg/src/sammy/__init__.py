"""Sammy: an interpreter and runtime for a programming language whose values are finite
categories, functors and natural transformations."""

from .core import (
    CAT,
    ONE,
    TWO,
    TWO_ISO,
    ZERO,
    ExplicitCategory,
    FunctorValue,
    NatTransValue,
    SammyError,
    categories_isomorphic,
    chain,
    codiscrete,
    discrete,
    make_category,
    size_limits,
    structures_isomorphic,
    thin,
    validate,
)
from .lang import decode, encode, enumerate_programs, parse, run

__version__ = "0.1.0"

__all__ = [
    "CAT",
    "ONE",
    "TWO",
    "TWO_ISO",
    "ZERO",
    "ExplicitCategory",
    "FunctorValue",
    "NatTransValue",
    "SammyError",
    "categories_isomorphic",
    "chain",
    "codiscrete",
    "decode",
    "discrete",
    "encode",
    "enumerate_programs",
    "make_category",
    "parse",
    "run",
    "size_limits",
    "structures_isomorphic",
    "thin",
    "validate",
]
