"""Exception hierarchy shared by all modules."""


class SuperGLError(Exception):
    """Base class for library errors."""


class ParityMismatchError(SuperGLError, ValueError):
    """Operands are graded by different parity functions."""


class PreconditionError(SuperGLError, ValueError):
    """An operation was called outside its domain."""


class UnsupportedProfileError(SuperGLError, ValueError):
    """A support descriptor lies outside the decidable grammar."""


class UnsupportedPermutationError(SuperGLError, ValueError):
    """A map is not a bijection expressible in the tail-progression grammar."""


class NotInGroupError(SuperGLError, ValueError):
    """A permutation lacks the group certificate an operation requires."""


class UnsupportedCaseError(SuperGLError, ValueError):
    """A group/class combination the deciders cannot settle."""
