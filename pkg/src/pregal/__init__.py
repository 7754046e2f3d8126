"""Toolkit for pre-Galois and potentially Galois analysis of finite
permutation-group extension models.

The public surface re-exports the main types and operations; see the
individual modules for the full API.
"""

__version__ = "0.1.0"

from .errors import (
    BadExponent,
    BoundExceeded,
    CenterNotTrivial,
    DegreeMismatch,
    EmptyTupleSet,
    HypothesisFailed,
    NoRationalPoint,
    NotAComplement,
    NotAHomomorphism,
    NotCharacteristic,
    NotCoreFree,
    NotNormal,
    NotNormalComplement,
    NotSimple,
    NotSubgroup,
    NotSurjective,
    NotZSProduct,
    ParseError,
    ToolkitError,
)
from .permgroup import (
    ConjClass,
    GroupMap,
    Perm,
    PermGroup,
    Subgroup,
    all_subgroups,
    automorphism_group,
    centralizer,
    closure,
    conjugacy_classes,
    is_isomorphic,
    normalizer,
    outer_order,
    quotient_group,
    regular_representation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
