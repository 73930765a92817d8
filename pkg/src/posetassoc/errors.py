"""Exception hierarchy.

Every error carries a stable ``code`` which the command line tool prints
next to the message.
"""


class PosetAssocError(Exception):
    code = "E_GENERIC"


class CycleError(PosetAssocError):
    code = "E_CYCLE"


class DuplicateElementError(PosetAssocError):
    code = "E_DUPLICATE"


class UnknownElementError(PosetAssocError):
    code = "E_UNKNOWN_ELEMENT"


class NotConnectedError(PosetAssocError):
    code = "E_NOT_CONNECTED"


class NotStronglyConnectedError(PosetAssocError):
    code = "E_NOT_STRONGLY_CONNECTED"


class NotATubeError(PosetAssocError):
    code = "E_NOT_A_TUBE"


class NotDisjointError(PosetAssocError):
    code = "E_NOT_DISJOINT"


class NotMaximalError(PosetAssocError):
    code = "E_NOT_MAXIMAL"


class BoundednessError(PosetAssocError):
    code = "E_NOT_BOUNDED"


class EpsilonRangeError(PosetAssocError):
    code = "E_EPSILON_RANGE"


class SingularSystemError(PosetAssocError):
    code = "E_SINGULAR"


class NotGenericError(PosetAssocError):
    code = "E_NOT_GENERIC"


class UnboundedError(PosetAssocError):
    code = "E_UNBOUNDED"


class FormatError(PosetAssocError):
    code = "E_FORMAT"
