"""Ext groups between tensor, symmetric and exterior powers of the
abelianization, as functors on finitely generated free groups."""

from .engine import ResourceError, ext_complex, ext_groups, ext_multicomplex
from .linalg import FgAbelianGroup, IntegerMatrix, cohomology, smith_normal_form
from .surjections import SignedSurjSum, Surjection, canonical_decomposition, external, yoneda
from .tables import FunctorKind, Kind, rational_ext, stable_homology

__version__ = "0.1.0"

__all__ = [
    "FgAbelianGroup",
    "FunctorKind",
    "IntegerMatrix",
    "Kind",
    "ResourceError",
    "SignedSurjSum",
    "Surjection",
    "canonical_decomposition",
    "cohomology",
    "ext_complex",
    "ext_groups",
    "ext_multicomplex",
    "external",
    "rational_ext",
    "smith_normal_form",
    "stable_homology",
    "yoneda",
]
