"""Exception types shared across the toolkit.

The CLI maps these onto exit codes: validation problems (bad input data)
exit with 2, exceeded resource caps exit with 3.
"""


class CapExceeded(RuntimeError):
    """Base class for configurable resource limits."""


class OrderCapExceeded(CapExceeded):
    """Group closure or subgroup lattice grew past the order cap."""


class EnumerationCapExceeded(CapExceeded):
    """A combinatorial search space is larger than the enumeration cap."""


class InvalidPermutation(ValueError):
    """Image list is not a bijection on 0..n-1."""


class NotNormal(ValueError):
    """Quotient requested by a non-normal subgroup."""


class NotFusionStable(ValueError):
    """Burnside element is not constant on fusion classes."""


class DimensionMismatch(ValueError):
    """Vector/matrix shapes do not line up."""


class NotDownwardClosed(ValueError):
    """A vertex set is not closed under taking subgroups."""


class NotRootOfUnity(ValueError):
    """A tuple entry is not a power of the ambient root of unity."""


class IntegralityViolation(RuntimeError):
    """An operation that is guaranteed integral failed to be; a bug."""


class SplitMismatch(RuntimeError):
    """The guaranteed direct-product split has inconsistent orders; a bug."""
