"""Verification workbench for finite additively idempotent semirings."""

from .algebra import FiniteAiSemiring, validate_axioms
from .catalog import Registry, default_registry, full_registry, load_catalog
from .satisfaction import Verdict, satisfies
from .terms import Identity, IdentityScheme, Term, Word, parse_identity, parse_term

__version__ = "0.1.0"

__all__ = [
    "FiniteAiSemiring",
    "Identity",
    "IdentityScheme",
    "Registry",
    "Term",
    "Verdict",
    "Word",
    "__version__",
    "default_registry",
    "full_registry",
    "load_catalog",
    "parse_identity",
    "parse_term",
    "satisfies",
    "validate_axioms",
]
