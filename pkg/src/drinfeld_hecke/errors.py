"""Exception types shared across the package."""


class NonExactDivision(ArithmeticError):
    """Polynomial division left a nonzero remainder where exactness was required."""


class DimensionMismatch(ValueError):
    """Matrix/vector/subspace dimensions are incompatible."""


class NotMonic(ValueError):
    """Characteristic polynomial input is not monic in X."""


class NotInvariant(ValueError):
    """An operator does not map the given subspace into itself."""


class InvalidWeightType(ValueError):
    """Weight and type violate the congruence k = 2m (mod q-1)."""


class ZeroSpace(ValueError):
    """The requested cusp form space is zero dimensional (n < 1)."""


class ConstructionInconsistent(RuntimeError):
    """The two independent descriptions of the operator matrices disagree.

    Raised when a cross identity (trace = I + MA vs M + A, AF = D,
    F^2 = t^k I) fails at build time; always indicates a bug.
    """


class EmptyLevelOne(ValueError):
    """No level-one forms: the degeneracy image Ker(MA) is zero."""


class DeltaNotInjective(RuntimeError):
    """dim(Ker(MA) + F Ker(MA)) < 2 dim Ker(MA); indicates a bug."""


class CrosscheckMismatch(RuntimeError):
    """Two provably equivalent criteria disagreed; indicates a bug."""


class TheoremViolation(RuntimeError):
    """A machine-checked theorem failed on a concrete parameter set.

    The analysis layer records violations in reports instead of raising;
    this type exists for callers that want strict behaviour.
    """


class UnsupportedFormat(ValueError):
    """Unknown serialization format."""
