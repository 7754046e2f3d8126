"""Exception taxonomy for the toolkit.

Every failure mode that callers are expected to handle gets its own class so
the CLI can map it to a machine-readable error object.  All of them derive
from :class:`ToolkitError`.
"""


class ToolkitError(Exception):
    """Base class for all toolkit errors."""

    #: short machine-readable code, stable across releases
    code = "error"


class BoundExceeded(ToolkitError):
    """A configured search or materialization bound was exhausted."""

    code = "bound-exceeded"

    def __init__(self, message, bound=None, reached=None):
        super().__init__(message)
        self.bound = bound
        self.reached = reached


class ParseError(ToolkitError):
    """Malformed group or scenario file."""

    code = "parse-error"

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class DegreeMismatch(ToolkitError):
    """A point is out of range or two objects live on different point sets."""

    code = "degree-mismatch"


class NotSubgroup(ToolkitError):
    code = "not-subgroup"


class NotNormal(ToolkitError):
    code = "not-normal"


class NotCharacteristic(ToolkitError):
    code = "not-characteristic"


class NotAComplement(ToolkitError):
    code = "not-a-complement"


class NotNormalComplement(ToolkitError):
    code = "not-a-normal-complement"


class NotZSProduct(ToolkitError):
    """The given pair of subgroups does not decompose the group."""

    code = "not-zs-product"


class NotCoreFree(ToolkitError):
    """The designated subgroup contains a nontrivial normal subgroup."""

    code = "not-core-free"


class NotAHomomorphism(ToolkitError):
    code = "not-a-homomorphism"


class NotSurjective(ToolkitError):
    code = "not-surjective"


class NotSimple(ToolkitError):
    code = "not-simple"


class HypothesisFailed(ToolkitError):
    """A structural hypothesis required by a construction does not hold."""

    code = "hypothesis-failed"


class CenterNotTrivial(ToolkitError):
    code = "center-not-trivial"


class NoRationalPoint(ToolkitError):
    """The model does not carry the rational-point splitting."""

    code = "no-rational-point"


class BadExponent(ToolkitError):
    """Exponent not coprime to the group exponent."""

    code = "bad-exponent"


class NotWeaklyRational(ToolkitError):
    """A power map with no compatible normalizer element blocks the construction."""

    code = "not-weakly-rational"


class EmptyTupleSet(ToolkitError):
    """A class tuple admits no generating product-one solutions."""

    code = "empty-tuple-set"
