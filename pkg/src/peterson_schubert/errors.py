"""Exception types raised across the package."""


class PetersonError(Exception):
    """Base class for all library errors."""


class UnknownType(PetersonError, ValueError):
    pass


class NonCartan(PetersonError, ValueError):
    pass


class NotARoot(PetersonError, ValueError):
    pass


class NotCoxeter(PetersonError, ValueError):
    pass


class GroupTooLarge(PetersonError):
    """Raised when a Weyl group closure would exceed the enumeration cap."""

    def __init__(self, estimate, cap):
        self.estimate = estimate
        self.cap = cap
        super().__init__(f"Weyl group has {estimate} elements, exceeding cap {cap}")


class InternalInconsistency(PetersonError, ArithmeticError):
    """An exact identity that must hold failed; indicates a bug, never bad input."""


class NonIntegralExpansion(PetersonError, ArithmeticError):
    pass


class VerificationFailure(PetersonError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"{report.name}: {len(report.violations)} violation(s)")
