class PolyBernError(Exception):
    pass


class ValidationError(PolyBernError, ValueError):
    """An object violates the invariants of its combinatorial class."""


class DomainError(PolyBernError, ValueError):
    """A map was applied outside its domain (e.g. k = 0 where k >= 1 is required)."""


class OrderMismatchError(PolyBernError, ValueError):
    pass


class UnknownModelError(PolyBernError, KeyError):
    pass
