"""Exception hierarchy shared by every weylforge module."""


class WeylforgeError(Exception):
    """Base class for all errors raised by the package."""


class InvalidFamilyRank(WeylforgeError, ValueError):
    pass


class SystemMismatch(WeylforgeError, ValueError):
    pass


class UnsupportedFamily(WeylforgeError, ValueError):
    pass


class NotDominant(WeylforgeError, ValueError):
    pass


class NotRestricted(WeylforgeError, ValueError):
    pass


class OrbitTooLarge(WeylforgeError, RuntimeError):
    pass


class Overflow(WeylforgeError, ArithmeticError):
    """A value left the signed 64-bit range the engine promises to stay in."""


class FormMismatch(WeylforgeError, TypeError):
    """Characters in different bases were combined."""


class MissingDecompositionData(WeylforgeError, LookupError):
    pass


class BranchExplosion(WeylforgeError, RuntimeError):
    pass


class InconsistentData(WeylforgeError, RuntimeError):
    """Every candidate branch was pruned; the inputs contradict each other."""


class UnknownScenario(WeylforgeError, KeyError):
    pass


class AmbiguousTopWeight(WeylforgeError, ValueError):
    pass


class NoEmbedding(WeylforgeError, ValueError):
    pass


class NoCertificate(WeylforgeError, RuntimeError):
    """A good (p,r)-filtration test was obstructed on one side of a Levi comparison.

    ``critical`` is set when the Levi side is obstructed while the ambient
    side has a certificate, which the Levi reduction theorem forbids.
    """

    def __init__(self, message, *, ambient=None, levi=None, critical=False):
        super().__init__(message)
        self.ambient = ambient
        self.levi = levi
        self.critical = critical


INT64_MAX = 2**63 - 1


def check_int64(value: int, what: str = "value") -> int:
    if value > INT64_MAX or value < -INT64_MAX - 1:
        raise Overflow(f"{what} {value} exceeds the 64-bit range")
    return value
