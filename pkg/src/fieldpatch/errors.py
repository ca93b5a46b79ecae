"""Exception hierarchy.

Every failure raised by the library derives from :class:`FieldPatchError`.
Errors that signal a violated mathematical identity (as opposed to bad
input) derive from :class:`CheckFailure`; the command line maps those to
exit status 1 and everything else to exit status 2.
"""

from __future__ import annotations


class FieldPatchError(Exception):
    """Base class for all library errors."""


class InputError(FieldPatchError):
    """Malformed or out-of-contract input."""


class CheckFailure(FieldPatchError):
    """A certificate or identity check did not hold."""


# exactalg
class BothZero(InputError):
    pass


class UnsupportedDenominator(InputError):
    pass


class NonEffective(InputError):
    pass


class NonCoprimePlaces(InputError):
    pass


class ReconstructionFailed(FieldPatchError):
    pass


class PrecisionError(FieldPatchError):
    """An operation needed data beyond the known precision."""


class WindowExceeded(PrecisionError):
    pass


class UnsupportedCharacteristic(InputError):
    pass


# trings
class RingMismatch(InputError):
    pass


class NonUnit(InputError):
    pass


class InexactDivision(FieldPatchError):
    pass


class NoInclusion(InputError):
    pass


class MembershipFailure(CheckFailure):
    pass


class NegativeXValuation(MembershipFailure):
    """A coefficient with a pole at x = 0 was placed in k[[x]]."""


# splitting
class ContextInvalid(InputError):
    pass


class NotEqual(CheckFailure):
    pass


# factorization
class NotNearIdentity(InputError):
    pass


class SingularAtPrecision(FieldPatchError):
    pass


class ZeroAtPrecision(FieldPatchError):
    pass


class NotUnit(InputError):
    pass


class CertificationFailed(CheckFailure):
    pass


# patching
class ShapeMismatch(InputError):
    pass


class VerificationFailed(CheckFailure):
    pass


# structures
class NotMultiplicative(CheckFailure):
    pass


class NotCompatible(CheckFailure):
    pass


class InconsistentTable(InputError):
    pass


class ZeroInput(InputError):
    pass
