"""Exact computations with m-replicated algebras of hereditary path algebras."""

__version__ = "0.1.0"

from .exactfield import DEFAULT_PRIME, DEFAULT_SEED, FieldSpec, InputError

__all__ = ["DEFAULT_PRIME", "DEFAULT_SEED", "FieldSpec", "InputError", "__version__"]
