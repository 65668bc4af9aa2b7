"""Exception types shared across the kernel."""


class QGroupsError(Exception):
    """Base class for all kernel errors."""


class PoleAtSpecialization(QGroupsError):
    """Denominator vanishes at the requested evaluation point."""


class InvalidCartan(QGroupsError):
    pass


class InvalidLattice(QGroupsError):
    pass


class InvalidPhi(QGroupsError):
    pass


class NotReduced(QGroupsError):
    """Word is not a reduced expression of the longest Weyl element."""


class DegreeTooLarge(QGroupsError):
    pass


class ConventionFailure(QGroupsError):
    """A root-vector or pairing convention fails its closure check."""


class NoConsistentConvention(ConventionFailure):
    pass


class PresentationMismatch(QGroupsError):
    pass


class NotInForm(QGroupsError):
    """Element does not lie in the requested integer form."""


class AxiomFailure(QGroupsError):
    pass


class CrossRelationFailure(QGroupsError):
    pass


class DualityFailure(QGroupsError):
    pass


class WindowTooSmall(QGroupsError):
    pass


class AmbiguousCharacters(QGroupsError):
    """Toral window cannot separate the candidate characters."""


class CongruenceFailure(QGroupsError):
    pass


class RelationFailure(QGroupsError):
    pass


class LimitFailure(QGroupsError):
    pass


class NotDivisible(QGroupsError):
    pass


class PropertyFailure(QGroupsError):
    pass


class SyntaxError_(QGroupsError):
    """Expression syntax error; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position
