"""Exception types shared across the package."""


class QCFError(Exception):
    """Base class for all package errors."""


class ZeroElement(QCFError):
    """A partial numerator evaluated to zero."""

    def __init__(self, n):
        super().__init__(f"partial numerator a_{n} is zero")
        self.n = n


class PoleEncountered(QCFError):
    """A partial denominator needed as a divisor evaluated to zero."""

    def __init__(self, n):
        super().__init__(f"partial denominator b_{n} is zero")
        self.n = n


class ZeroContractionDenominator(QCFError):
    """An emitted contraction denominator evaluated to zero."""

    def __init__(self, n):
        super().__init__(f"contraction denominator {n} is zero")
        self.n = n


class DegenerateMap(QCFError):
    """The tail map c/(1+w) has c = 0."""


class OutOfDomain(QCFError):
    """The point q lies on or inside the unit circle."""


class NotApplicable(QCFError):
    """No tail-limit formula exists for the requested case."""


class UnknownName(QCFError, KeyError):
    """Catalog lookup failed."""

    def __str__(self):
        return Exception.__str__(self)
