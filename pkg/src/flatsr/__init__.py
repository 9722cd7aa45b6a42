"""Finite flat semirings, graph semirings, identities and varieties."""

from .errors import FlatsrError, InputError, PreconditionError, ResourceError, UnsupportedInputError
from .semiring import FiniteSemiring, flat_profile, verify_axioms, find_isomorphism, is_isomorphic
from .terms import Identity, parse_identity, satisfies, identity_family
from .graphs import DiGraph, components, validate_graph, semiring_to_graph
from .constructors import (
    from_words, words_semiring, from_graph, path_semiring, cycle_semiring,
    zero_direct_union, omega_direct_union, s7, flat_extension,
)
