"""Exception hierarchy shared across the toolkit."""


class InputError(ValueError):
    """Caller supplied an argument outside an operation's domain."""


class RangeError(InputError):
    """Requested index lies beyond the stored coefficient range."""


class InternalConsistencyError(RuntimeError):
    """An exact identity that must hold by construction failed.

    Raised only for conditions that indicate a bug (e.g. a non-exact
    division in the cusp-form series build), never for bad user input.
    """
