"""Exception hierarchy for the singshock package."""


class SingshockError(Exception):
    """Base class for all package errors."""


class DomainError(SingshockError):
    """Curve evaluated outside its domain of definition."""


class DegenerateJump(SingshockError):
    """Left and right u-values coincide; no jump speed is defined."""


class NotRepresentable(SingshockError):
    """Requested singular-shock split would need a negative squared weight."""


class NegativeStrength(SingshockError):
    """Delta strength evaluated past the point where it reaches zero."""


class NoClassicalSolution(SingshockError):
    """No shock/rarefaction two-wave solution exists for the given data."""


class ConvergenceFailure(SingshockError):
    """Iterative root-finding exceeded its iteration budget."""


class Unresolvable(SingshockError):
    """No solution branch applies to the given Riemann data."""


class OutsideSDSL(SingshockError):
    """Delta-carrying data whose right state admits no singular shock."""


class OutsideFan(SingshockError):
    """Self-similar coordinate outside the rarefaction fan's wedge."""


class OvercompressibilityLost(SingshockError):
    """A singular-shock path stopped being overcompressive mid-integration."""


class PoleError(SingshockError):
    """Closed-form diagnostic evaluated at a pole of its denominator."""


class ExpectedTwoShocks(SingshockError):
    """A vanished singular shock did not decouple into two Lax shocks."""


class EventCongestion(SingshockError):
    """Two distinct interaction events coincide in time beyond tolerance."""


class BlowUp(SingshockError):
    """Finite-volume run produced non-finite cell values."""


class NoFront(SingshockError):
    """Snapshot has no detectable discontinuity front."""


class WindowClipped(SingshockError):
    """Delta-mass measurement window extends outside the grid."""
