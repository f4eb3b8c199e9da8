"""Exception hierarchy shared by all singlocal modules."""


class SingLocalError(Exception):
    """Base class for all errors raised by this library."""


class DivisionByZero(SingLocalError, ZeroDivisionError):
    """Division by the zero element of a coefficient field."""


class PoleAtAssignment(SingLocalError):
    """A parameter specialization makes a denominator vanish."""

    def __init__(self, assignment, denominator):
        self.assignment = dict(assignment)
        self.denominator = denominator
        super().__init__(f"denominator {denominator} vanishes at {self.assignment}")


class ParseError(SingLocalError):
    """Malformed polynomial or scalar text; carries the character offset."""

    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} (at position {position})")


class NegativeExponent(ParseError):
    pass


class UnknownSymbol(SingLocalError):
    def __init__(self, name, where=""):
        self.name = name
        msg = f"unknown symbol {name!r}"
        if where:
            msg += f" in {where}"
        super().__init__(msg)


class ArityMismatch(SingLocalError):
    """Polynomials from incompatible rings were combined."""


class ArityUnsupported(SingLocalError):
    """Operation restricted to a fixed number of variables."""


class ZeroPolynomial(SingLocalError):
    """The zero polynomial has no Newton polygon."""


class NotConvenient(SingLocalError):
    """Newton diagram misses a coordinate axis; carries which one."""

    def __init__(self, missing_axis):
        self.missing_axis = missing_axis
        super().__init__(
            f"Newton diagram does not meet the {missing_axis}-axis; "
            f"Newton number undefined (see make_convenient)"
        )


class SegmentMismatch(SingLocalError):
    """The given segment does not belong to the polynomial's polygon."""


class CapExceeded(SingLocalError):
    """A degree cap was hit before the staircase could be certified."""

    def __init__(self, message, partial_staircase=None, cap=None):
        self.partial_staircase = partial_staircase
        self.cap = cap
        super().__init__(message)


class NotStabilized(SingLocalError):
    """Jet-truncation dimension did not stabilize below the cap."""


class NonIsolated(SingLocalError):
    """The critical point is not isolated (infinite local algebra)."""


class InvalidGerm(SingLocalError):
    """Input is not a germ vanishing at the origin."""


class OracleDisagreement(SingLocalError):
    """Independent computations of the same value differ; fatal."""

    def __init__(self, values):
        self.values = dict(values)
        super().__init__(f"independent methods disagree: {self.values}")


class BaseMismatch(SingLocalError):
    """Family total does not restrict to the declared base at s = 0."""


class NonzeroAtOrigin(SingLocalError):
    """Family total does not vanish at the origin for all s."""


class GenericNonIsolated(SingLocalError):
    """The generic member of a family has a non-isolated critical point."""


class SampleInconsistent(SingLocalError):
    """Sampled generic Milnor number attained its minimum only once."""


class EmptyGrid(SingLocalError):
    """A search grid with no directions, coefficients or weights."""


class BudgetExceeded(SingLocalError):
    """Search grid enumerates more families than the configured budget."""


class CorruptRecord(SingLocalError):
    """A cache line that cannot be decoded."""
